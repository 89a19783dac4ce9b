#include <algorithm>
#include <ostream>

#include "semnet/core/errors.hpp"
#include "semnet/core/parallel.hpp"
#include "semnet/graph/io.hpp"
#include "semnet/kernels/kernels.hpp"
#include "semnet/projection/project.hpp"

namespace semnet {

namespace {

std::vector<double> probability_row(const BicmFit& fit, std::uint32_t node,
                                    BipartiteGraph::Layer layer) {
    const bool top = layer == BipartiteGraph::Layer::Top;
    const std::size_t opposite = top ? fit.bottom_count() : fit.top_count();
    std::vector<double> row(opposite);
    for (std::uint32_t o = 0; o < opposite; ++o)
        row[o] = top ? fit.probability(node, o) : fit.probability(o, node);
    return row;
}

Survival pvalue_from_rows(const std::vector<double>& row_i, const std::vector<double>& row_j,
                          std::uint64_t observed, std::vector<double>& scratch) {
    scratch.resize(row_i.size());
    kernels::active_ops().mul(row_i.data(), row_j.data(), scratch.data(), row_i.size());
    return poisson_binomial_survival_ex(scratch, observed);
}

}  // namespace

Survival pair_pvalue_ex(const BicmFit& fit, std::uint32_t i, std::uint32_t j,
                        std::uint64_t observed, BipartiteGraph::Layer layer) {
    const std::size_t layer_size =
        layer == BipartiteGraph::Layer::Top ? fit.top_count() : fit.bottom_count();
    const std::size_t opposite =
        layer == BipartiteGraph::Layer::Top ? fit.bottom_count() : fit.top_count();
    if (i >= layer_size || j >= layer_size) throw DataError("pair_pvalue: node index out of range");
    if (i == j) throw DataError("pair_pvalue: identical nodes");
    if (observed > opposite)
        throw DataError("pair_pvalue: observed count exceeds the opposite layer size");
    const std::vector<double> row_i = probability_row(fit, i, layer);
    const std::vector<double> row_j = probability_row(fit, j, layer);
    std::vector<double> scratch;
    return pvalue_from_rows(row_i, row_j, observed, scratch);
}

double pair_pvalue(const BicmFit& fit, std::uint32_t i, std::uint32_t j, std::uint64_t observed,
                   BipartiteGraph::Layer layer) {
    return pair_pvalue_ex(fit, i, j, observed, layer).value;
}

ValidatedProjection project_validated(const BipartiteGraph& g, BipartiteGraph::Layer layer,
                                      double alpha, const BicmFit* fit,
                                      const ProjectionOptions& options) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("project_validated: alpha must lie in (0,1)");
    std::optional<BicmFit> own_fit;
    if (!fit) {
        own_fit = solve_bicm(g, options.solve);
        fit = &*own_fit;
    }

    ValidatedProjection proj;
    proj.layer = layer;
    proj.alpha = alpha;

    const VMotifCounts motifs = count_vmotifs(g, layer);
    proj.tests.reserve(motifs.counts.size());
    for (const auto& [key, count] : motifs.counts) {
        PairTestResult t;
        t.a = static_cast<std::uint32_t>(key >> 32);
        t.b = static_cast<std::uint32_t>(key & 0xffffffffu);
        t.observed = count;
        proj.tests.push_back(t);
    }
    std::sort(proj.tests.begin(), proj.tests.end(), [](const PairTestResult& x, const PairTestResult& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });

    // Per-node probability rows, shared across the pair tests.
    const std::size_t layer_size =
        layer == BipartiteGraph::Layer::Top ? g.top_count() : g.bottom_count();
    std::vector<std::vector<double>> rows(layer_size);
    for (const auto& t : proj.tests) {
        if (rows[t.a].empty()) rows[t.a] = probability_row(*fit, t.a, layer);
        if (rows[t.b].empty()) rows[t.b] = probability_row(*fit, t.b, layer);
    }

    parallel_chunks(proj.tests.size(), 64, options.threads,
                    [&](std::size_t begin, std::size_t end) {
                        std::vector<double> scratch;
                        for (std::size_t k = begin; k < end; ++k) {
                            PairTestResult& t = proj.tests[k];
                            const Survival s =
                                pvalue_from_rows(rows[t.a], rows[t.b], t.observed, scratch);
                            t.p_value = s.value;
                            t.underflow = s.underflow;
                        }
                    });

    std::vector<double> pvalues(proj.tests.size());
    for (std::size_t k = 0; k < proj.tests.size(); ++k) pvalues[k] = proj.tests[k].p_value;
    const std::size_t m_hyp = options.universe == FdrUniverse::AllPairs
                                  ? layer_size * (layer_size - 1) / 2
                                  : proj.tests.size();
    const FdrSelection sel = fdr_select(pvalues, alpha, std::max(m_hyp, proj.tests.size()));
    proj.hypotheses = sel.hypotheses;
    proj.cutoff_rank = sel.cutoff_rank;
    proj.cutoff_pvalue = sel.cutoff_pvalue;
    for (std::size_t idx : sel.selected) proj.tests[idx].validated = true;
    proj.validated_count = sel.selected.size();

    std::vector<std::string> ids =
        layer == BipartiteGraph::Layer::Top ? g.top_ids() : g.bottom_ids();
    std::vector<UndirectedGraph::Edge> edges;
    edges.reserve(sel.selected.size());
    for (const auto& t : proj.tests)
        if (t.validated) edges.push_back({t.a, t.b, 1.0});
    proj.graph = UndirectedGraph::from_edges(std::move(ids), std::move(edges));
    return proj;
}

void write_projection_csv(std::ostream& out, const BipartiteGraph& g,
                          const ValidatedProjection& proj) {
    const bool top = proj.layer == BipartiteGraph::Layer::Top;
    out << "node_a,node_b,v_count,p_value,validated\n";
    for (const auto& t : proj.tests) {
        const std::string& ida = top ? g.top_id(t.a) : g.bottom_id(t.a);
        const std::string& idb = top ? g.top_id(t.b) : g.bottom_id(t.b);
        out << csv_escape(ida) << ',' << csv_escape(idb) << ',' << t.observed << ','
            << format_double(t.p_value) << ',' << (t.validated ? 1 : 0) << '\n';
    }
}

nlohmann::ordered_json projection_summary(const ValidatedProjection& proj) {
    nlohmann::ordered_json j;
    j["layer"] = proj.layer == BipartiteGraph::Layer::Top ? "top" : "bottom";
    j["alpha"] = proj.alpha;
    j["hypotheses"] = proj.hypotheses;
    j["tested_pairs"] = proj.tests.size();
    j["cutoff_rank"] = proj.cutoff_rank;
    j["cutoff_pvalue"] = proj.cutoff_pvalue;
    j["validated_edges"] = proj.validated_count;
    std::size_t underflows = 0;
    for (const auto& t : proj.tests)
        if (t.underflow) ++underflows;
    j["underflowed_pvalues"] = underflows;
    return j;
}

}  // namespace semnet

#include "semnet/community/modularity.hpp"

#include <cmath>
#include <map>

#include "semnet/core/errors.hpp"

namespace semnet {

ModularityContext ModularityContext::chung_lu(const UndirectedGraph& g, bool include_self_pairs) {
    if (g.total_weight() <= 0.0) throw DataError("modularity: graph has no edges");
    ModularityContext ctx;
    ctx.graph_ = &g;
    ctx.model_ = NullModel::ChungLu;
    ctx.include_self_pairs_ = include_self_pairs;

    // Chung-Lu rows depend only on strength; group by exact strength value.
    std::map<double, std::uint32_t> classes;
    ctx.class_of_.resize(g.node_count());
    std::vector<double> strength_of_class;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        auto [it, inserted] =
            classes.emplace(g.strength(i), static_cast<std::uint32_t>(classes.size()));
        if (inserted) strength_of_class.push_back(g.strength(i));
        ctx.class_of_[i] = it->second;
    }
    const std::size_t d = strength_of_class.size();
    const double two_m = 2.0 * g.total_weight();
    ctx.pm_.resize(d * d);
    ctx.diag_value_.resize(d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b)
            ctx.pm_[a * d + b] = strength_of_class[a] * strength_of_class[b] / two_m;
        ctx.diag_value_[a] = strength_of_class[a] * strength_of_class[a] / two_m;
    }
    return ctx;
}

ModularityContext ModularityContext::exact_ucm(const UndirectedGraph& g, const UcmFit& fit,
                                               bool include_self_pairs) {
    if (g.total_weight() <= 0.0) throw DataError("modularity: graph has no edges");
    if (fit.node_count() != g.node_count())
        throw DataError("modularity: UCM fit does not match the graph");
    ModularityContext ctx;
    ctx.graph_ = &g;
    ctx.model_ = NullModel::ExactUcm;
    ctx.include_self_pairs_ = include_self_pairs;

    // Free nodes group by degree (equal degree => equal multiplier); every
    // pinned node gets a singleton class so the step-ordered forced
    // probabilities survive the grouping.
    ctx.class_of_.resize(g.node_count());
    std::vector<std::uint32_t> representative;
    std::map<std::uint64_t, std::uint32_t> degree_class;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        const double x = fit.multiplier(i);
        const bool free_node = std::isfinite(x) && x > 0.0;
        if (free_node) {
            auto [it, inserted] =
                degree_class.emplace(g.degree(i), static_cast<std::uint32_t>(representative.size()));
            if (inserted) representative.push_back(i);
            ctx.class_of_[i] = it->second;
        } else {
            ctx.class_of_[i] = static_cast<std::uint32_t>(representative.size());
            representative.push_back(i);
        }
    }
    const std::size_t d = representative.size();
    ctx.pm_.resize(d * d);
    ctx.diag_value_.resize(d);
    for (std::size_t a = 0; a < d; ++a) {
        const std::uint32_t ra = representative[a];
        for (std::size_t b = 0; b < d; ++b) {
            const std::uint32_t rb = representative[b];
            ctx.pm_[a * d + b] = (ra == rb) ? fit.self_pair_value(ra) : fit.probability(ra, rb);
        }
        ctx.diag_value_[a] = fit.self_pair_value(ra);
    }
    return ctx;
}

double ModularityContext::modularity(const Partition& partition) const {
    const UndirectedGraph& g = *graph_;
    if (partition.community_of.size() != g.node_count())
        throw DataError("modularity: partition does not cover the graph");
    const double two_m = 2.0 * g.total_weight();

    const std::size_t n_comm = partition.community_count;
    const std::size_t d = diag_value_.size();
    std::vector<double> counts(n_comm * d, 0.0);
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        counts[partition.community_of[i] * d + class_of_[i]] += 1.0;

    std::vector<double> internal_weight(n_comm, 0.0);
    for (const auto& e : g.edges())
        if (partition.community_of[e.a] == partition.community_of[e.b])
            internal_weight[partition.community_of[e.a]] += e.weight;

    double q = 0.0;
    for (std::size_t c = 0; c < n_comm; ++c) {
        const double* cnt = counts.data() + c * d;
        double p_mass = 0.0;  // ordered pairs including the diagonal
        for (std::size_t a = 0; a < d; ++a) {
            if (cnt[a] == 0.0) continue;
            double row = 0.0;
            for (std::size_t b = 0; b < d; ++b) row += cnt[b] * pm_[a * d + b];
            p_mass += cnt[a] * row;
        }
        if (!include_self_pairs_)
            for (std::size_t a = 0; a < d; ++a) p_mass -= cnt[a] * diag_value_[a];
        q += 2.0 * internal_weight[c] - p_mass;
    }
    return q / two_m;
}

}  // namespace semnet

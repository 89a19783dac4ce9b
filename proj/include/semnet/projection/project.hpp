#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "semnet/graph/bipartite.hpp"
#include "semnet/graph/undirected.hpp"
#include "semnet/maxent/bicm.hpp"
#include "semnet/projection/poisson_binomial.hpp"

namespace semnet {

// Observed co-occurrence counts V_ij over one layer; only pairs with at
// least one common neighbor are stored, keyed (lo << 32) | hi.
struct VMotifCounts {
    BipartiteGraph::Layer layer = BipartiteGraph::Layer::Top;
    std::unordered_map<std::uint64_t, std::uint32_t> counts;

    static std::uint64_t key(std::uint32_t i, std::uint32_t j) {
        if (i > j) std::swap(i, j);
        return (static_cast<std::uint64_t>(i) << 32) | j;
    }
    std::uint32_t get(std::uint32_t i, std::uint32_t j) const {
        auto it = counts.find(key(i, j));
        return it == counts.end() ? 0 : it->second;
    }
};

// Counts common neighbors by walking opposite-layer adjacency lists, never by
// enumerating all pairs.
VMotifCounts count_vmotifs(const BipartiteGraph& g, BipartiteGraph::Layer layer);

// Benjamini-Hochberg step-up selection.
struct FdrSelection {
    std::vector<std::size_t> selected;  // indices into the p-value list, ascending
    std::size_t cutoff_rank = 0;        // largest r with p_(r) <= r*alpha/m; 0 = none
    double cutoff_pvalue = 0.0;         // realized p_(r)
    std::size_t hypotheses = 0;
};

// `m_hypotheses` may exceed the list size (untested hypotheses with p = 1);
// 0 means "use the list size".
FdrSelection fdr_select(const std::vector<double>& pvalues, double alpha,
                        std::size_t m_hypotheses = 0);

// Upper-tail p-value of the observed co-occurrence count for one same-layer
// pair under the fitted BiCM: per opposite-layer node the V-motif is a
// Bernoulli trial with success probability p_ia * p_ja.
Survival pair_pvalue_ex(const BicmFit& fit, std::uint32_t i, std::uint32_t j,
                        std::uint64_t observed,
                        BipartiteGraph::Layer layer = BipartiteGraph::Layer::Top);
double pair_pvalue(const BicmFit& fit, std::uint32_t i, std::uint32_t j, std::uint64_t observed,
                   BipartiteGraph::Layer layer = BipartiteGraph::Layer::Top);

struct PairTestResult {
    std::uint32_t a = 0, b = 0;  // projected-layer indices, a < b
    std::uint32_t observed = 0;
    double p_value = 1.0;
    bool underflow = false;
    bool validated = false;
};

enum class FdrUniverse {
    AllPairs,  // m = C(N, 2): every same-layer pair is a hypothesis
    Observed,  // m = number of pairs with V > 0
};

struct ProjectionOptions {
    FdrUniverse universe = FdrUniverse::AllPairs;
    unsigned threads = 1;
    SolveOptions solve;
};

struct ValidatedProjection {
    UndirectedGraph graph;  // all projected-layer nodes; edges = validated pairs
    std::vector<PairTestResult> tests;  // ordered by (a, b)
    BipartiteGraph::Layer layer = BipartiteGraph::Layer::Top;
    double alpha = 0.0;
    std::size_t hypotheses = 0;
    std::size_t cutoff_rank = 0;
    double cutoff_pvalue = 0.0;
    std::size_t validated_count = 0;
};

// Full pipeline: count V-motifs, test each observed pair against the BiCM
// null, keep the FDR-validated pairs. Solves the fit internally when absent.
ValidatedProjection project_validated(const BipartiteGraph& g, BipartiteGraph::Layer layer,
                                      double alpha, const BicmFit* fit = nullptr,
                                      const ProjectionOptions& options = {});

// CSV `node_a,node_b,v_count,p_value,validated` in test order.
void write_projection_csv(std::ostream& out, const BipartiteGraph& g,
                          const ValidatedProjection& proj);

nlohmann::ordered_json projection_summary(const ValidatedProjection& proj);

}  // namespace semnet

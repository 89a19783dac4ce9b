#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "semnet/graph/undirected.hpp"
#include "semnet/maxent/bicm.hpp"

namespace semnet {

// Fitted monopartite Undirected Configuration Model: P_ij = x_i x_j / (1 +
// x_i x_j), constrained so every node's expected degree matches its observed
// degree. Same reduced degree-class solver and degenerate-degree peeling as
// the bipartite model.
class UcmFit {
public:
    // i != j; the i == j value is exposed separately because the ensemble has
    // no self-loops and callers opt into diagonal terms explicitly.
    double probability(std::uint32_t i, std::uint32_t j) const;

    // Mechanical extension of the functional form to i == j, used by the
    // modularity convention that keeps diagonal null-model terms.
    double self_pair_value(std::uint32_t i) const;

    double expected_degree(std::uint32_t i) const;

    std::size_t node_count() const { return class_of_.size(); }
    double residual() const { return residual_; }
    double tolerance() const { return tolerance_; }
    std::uint32_t iterations() const { return iterations_; }
    double multiplier(std::uint32_t i) const;

    const std::vector<double>& likelihood_trace() const { return likelihood_trace_; }
    const std::vector<std::uint64_t>& degrees() const { return degree_; }

    nlohmann::ordered_json to_json() const;
    static UcmFit from_json(const nlohmann::json& j);

    friend UcmFit solve_ucm(const UndirectedGraph& g, const SolveOptions& opts);

private:
    std::vector<std::uint64_t> degree_;
    std::vector<NodeForce> force_;
    std::vector<double> x_;  // per node; NaN for forced nodes
    std::vector<std::uint32_t> class_of_;
    double residual_ = 0.0;
    double tolerance_ = 0.0;
    std::uint32_t iterations_ = 0;
    std::vector<double> likelihood_trace_;
};

UcmFit solve_ucm(const UndirectedGraph& g, const SolveOptions& opts = {});

struct ChungLuProbability {
    double value = 0.0;
    bool clamped = false;  // raw k_i k_j / (2m) exceeded 1
};

// Sparse-graph approximation of the UCM: P_ij ~ k_i k_j / (2m).
ChungLuProbability chung_lu_probability(const UndirectedGraph& g, std::uint32_t i, std::uint32_t j);

}  // namespace semnet

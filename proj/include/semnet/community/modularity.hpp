#pragma once

#include <cstdint>
#include <vector>

#include "semnet/graph/partition.hpp"
#include "semnet/graph/undirected.hpp"
#include "semnet/maxent/ucm.hpp"

namespace semnet {

enum class NullModel { ExactUcm, ChungLu };

// Modularity machinery over a fixed graph and null model:
//   Q = (1/2m) sum_ij (A_ij - P_ij) delta(C_i, C_j).
// The sum runs over ordered pairs including i == j (A_ii = 0 on simple
// graphs, so the diagonal contributes the constant -sum_i P_ii/(2m); under
// Chung-Lu this makes the whole-graph community score exactly 0).
// `include_self_pairs = false` drops the diagonal instead.
//
// Nodes are grouped into probability classes (equal degree => equal P row),
// so community-level P sums cost O(classes) rather than O(members); Louvain
// maintains these class counts incrementally.
class ModularityContext {
public:
    static ModularityContext chung_lu(const UndirectedGraph& g, bool include_self_pairs = true);

    // `fit` must outlive the context and be solved on `g`.
    static ModularityContext exact_ucm(const UndirectedGraph& g, const UcmFit& fit,
                                       bool include_self_pairs = true);

    const UndirectedGraph& graph() const { return *graph_; }
    NullModel null_model() const { return model_; }
    bool include_self_pairs() const { return include_self_pairs_; }

    // Null-model link probability for i != j.
    double pij(std::uint32_t i, std::uint32_t j) const {
        return class_value(class_of_[i], class_of_[j]);
    }
    // Diagonal value P_ii (mechanical extension of the functional form).
    double self_value(std::uint32_t i) const { return diag_value_[class_of_[i]]; }

    std::size_t class_count() const { return diag_value_.size(); }
    std::uint32_t class_of(std::uint32_t node) const { return class_of_[node]; }
    double class_value(std::uint32_t ca, std::uint32_t cb) const {
        return pm_[ca * diag_value_.size() + cb];
    }
    double class_diagonal(std::uint32_t ca) const { return diag_value_[ca]; }

    double modularity(const Partition& partition) const;

private:
    const UndirectedGraph* graph_ = nullptr;
    NullModel model_ = NullModel::ChungLu;
    bool include_self_pairs_ = true;
    std::vector<std::uint32_t> class_of_;
    std::vector<double> pm_;          // class x class pair values
    std::vector<double> diag_value_;  // per-class P_ii
};

}  // namespace semnet

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace semnet {

// Simple undirected graph with optional non-negative edge weights.
// Self-loops are rejected by construction; Louvain keeps its own aggregate
// bookkeeping instead of coarse self-loop edges. Immutable after build.
class UndirectedGraph {
public:
    struct Neighbor {
        std::uint32_t node;
        double weight;
    };

    struct Edge {
        std::uint32_t a;
        std::uint32_t b;
        double weight;
    };

    UndirectedGraph() = default;

    // Duplicate (a, b) pairs are merged by summing weights. Self-loops and
    // negative weights throw.
    static UndirectedGraph from_edges(std::vector<std::string> node_ids,
                                      std::vector<Edge> edges);

    std::size_t node_count() const { return node_ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Total edge weight m (edge count when unweighted).
    double total_weight() const { return total_weight_; }

    const std::vector<Neighbor>& adjacency(std::uint32_t i) const { return adj_[i]; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::uint64_t degree(std::uint32_t i) const { return adj_[i].size(); }
    // Weighted degree k_i.
    double strength(std::uint32_t i) const { return strength_[i]; }
    const std::vector<double>& strengths() const { return strength_; }

    bool has_edge(std::uint32_t a, std::uint32_t b) const;
    double edge_weight(std::uint32_t a, std::uint32_t b) const;  // 0 when absent

    const std::string& node_id(std::uint32_t i) const { return node_ids_[i]; }
    const std::vector<std::string>& node_ids() const { return node_ids_; }
    std::int64_t node_index(const std::string& id) const;

    bool is_weighted() const { return weighted_; }

    // Keeps exactly the edges with both endpoints in `ids`; unknown
    // identifiers throw. Node order follows the original graph.
    UndirectedGraph induced_subgraph(const std::unordered_set<std::string>& ids) const;

private:
    std::vector<std::string> node_ids_;
    std::unordered_map<std::string, std::uint32_t> lookup_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<Edge> edges_;
    std::vector<double> strength_;
    double total_weight_ = 0.0;
    bool weighted_ = false;
};

}  // namespace semnet

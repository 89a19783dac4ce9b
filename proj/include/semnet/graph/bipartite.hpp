#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace semnet {

// Binary bipartite graph over two node layers. Node identifiers are opaque
// strings mapped once to dense indices at build time; all numeric code works
// on indices. Storage is sparse: per-node sorted adjacency lists on both
// layers. Immutable after construction.
class BipartiteGraph {
public:
    enum class Layer { Top, Bottom };

    BipartiteGraph() = default;

    // Builds from explicit node lists plus (top index, bottom index) pairs.
    // Duplicate pairs collapse to a single edge; out-of-range indices throw.
    static BipartiteGraph from_edges(std::vector<std::string> top_ids,
                                     std::vector<std::string> bottom_ids,
                                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    std::size_t top_count() const { return top_ids_.size(); }
    std::size_t bottom_count() const { return bottom_ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::uint32_t>& top_adjacency(std::uint32_t i) const { return top_adj_[i]; }
    const std::vector<std::uint32_t>& bottom_adjacency(std::uint32_t a) const { return bottom_adj_[a]; }

    std::uint64_t top_degree(std::uint32_t i) const { return top_adj_[i].size(); }
    std::uint64_t bottom_degree(std::uint32_t a) const { return bottom_adj_[a].size(); }

    std::vector<std::uint64_t> top_degrees() const;
    std::vector<std::uint64_t> bottom_degrees() const;

    bool has_edge(std::uint32_t i, std::uint32_t a) const;

    const std::string& top_id(std::uint32_t i) const { return top_ids_[i]; }
    const std::string& bottom_id(std::uint32_t a) const { return bottom_ids_[a]; }
    const std::vector<std::string>& top_ids() const { return top_ids_; }
    const std::vector<std::string>& bottom_ids() const { return bottom_ids_; }

    // Returns the dense index of an identifier, or -1 when absent.
    std::int64_t top_index(const std::string& id) const;
    std::int64_t bottom_index(const std::string& id) const;

private:
    std::vector<std::string> top_ids_;
    std::vector<std::string> bottom_ids_;
    std::unordered_map<std::string, std::uint32_t> top_lookup_;
    std::unordered_map<std::string, std::uint32_t> bottom_lookup_;
    std::vector<std::vector<std::uint32_t>> top_adj_;
    std::vector<std::vector<std::uint32_t>> bottom_adj_;
    std::size_t edge_count_ = 0;
};

// Exact degrees in node order for the requested layer.
std::vector<std::uint64_t> degree_sequence(const BipartiteGraph& g, BipartiteGraph::Layer layer);

}  // namespace semnet

#include "semnet/graph/bipartite.hpp"

#include <algorithm>
#include <stdexcept>

#include "semnet/core/errors.hpp"

namespace semnet {

BipartiteGraph BipartiteGraph::from_edges(
    std::vector<std::string> top_ids, std::vector<std::string> bottom_ids,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    BipartiteGraph g;
    g.top_ids_ = std::move(top_ids);
    g.bottom_ids_ = std::move(bottom_ids);
    g.top_lookup_.reserve(g.top_ids_.size());
    for (std::uint32_t i = 0; i < g.top_ids_.size(); ++i) {
        if (!g.top_lookup_.emplace(g.top_ids_[i], i).second)
            throw DataError("duplicate top node id: " + g.top_ids_[i]);
    }
    g.bottom_lookup_.reserve(g.bottom_ids_.size());
    for (std::uint32_t a = 0; a < g.bottom_ids_.size(); ++a) {
        if (!g.bottom_lookup_.emplace(g.bottom_ids_[a], a).second)
            throw DataError("duplicate bottom node id: " + g.bottom_ids_[a]);
    }
    g.top_adj_.resize(g.top_ids_.size());
    g.bottom_adj_.resize(g.bottom_ids_.size());
    for (const auto& [i, a] : edges) {
        if (i >= g.top_ids_.size() || a >= g.bottom_ids_.size())
            throw DataError("bipartite edge index out of range");
        g.top_adj_[i].push_back(a);
    }
    for (std::uint32_t i = 0; i < g.top_adj_.size(); ++i) {
        auto& adj = g.top_adj_[i];
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        g.edge_count_ += adj.size();
        for (std::uint32_t a : adj) g.bottom_adj_[a].push_back(i);
    }
    for (auto& adj : g.bottom_adj_) std::sort(adj.begin(), adj.end());
    return g;
}

std::vector<std::uint64_t> BipartiteGraph::top_degrees() const {
    std::vector<std::uint64_t> d(top_adj_.size());
    for (std::size_t i = 0; i < top_adj_.size(); ++i) d[i] = top_adj_[i].size();
    return d;
}

std::vector<std::uint64_t> BipartiteGraph::bottom_degrees() const {
    std::vector<std::uint64_t> d(bottom_adj_.size());
    for (std::size_t a = 0; a < bottom_adj_.size(); ++a) d[a] = bottom_adj_[a].size();
    return d;
}

bool BipartiteGraph::has_edge(std::uint32_t i, std::uint32_t a) const {
    const auto& adj = top_adj_[i];
    return std::binary_search(adj.begin(), adj.end(), a);
}

std::int64_t BipartiteGraph::top_index(const std::string& id) const {
    auto it = top_lookup_.find(id);
    return it == top_lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::int64_t BipartiteGraph::bottom_index(const std::string& id) const {
    auto it = bottom_lookup_.find(id);
    return it == bottom_lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::vector<std::uint64_t> degree_sequence(const BipartiteGraph& g, BipartiteGraph::Layer layer) {
    return layer == BipartiteGraph::Layer::Top ? g.top_degrees() : g.bottom_degrees();
}

}  // namespace semnet

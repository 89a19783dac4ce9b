#include "semnet/graph/undirected.hpp"

#include <algorithm>
#include <map>

#include "semnet/core/errors.hpp"

namespace semnet {

UndirectedGraph UndirectedGraph::from_edges(std::vector<std::string> node_ids,
                                            std::vector<Edge> edges) {
    UndirectedGraph g;
    g.node_ids_ = std::move(node_ids);
    g.lookup_.reserve(g.node_ids_.size());
    for (std::uint32_t i = 0; i < g.node_ids_.size(); ++i) {
        if (!g.lookup_.emplace(g.node_ids_[i], i).second)
            throw DataError("duplicate node id: " + g.node_ids_[i]);
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, double> merged;
    for (auto& e : edges) {
        if (e.a >= g.node_ids_.size() || e.b >= g.node_ids_.size())
            throw DataError("edge index out of range");
        if (e.a == e.b) throw DataError("self-loop rejected: " + g.node_ids_[e.a]);
        if (e.weight < 0.0) throw DataError("negative edge weight");
        const auto key = std::minmax(e.a, e.b);
        merged[{key.first, key.second}] += e.weight;
    }
    for (const auto& [key, w] : merged)
        if (w != 1.0) g.weighted_ = true;

    g.adj_.resize(g.node_ids_.size());
    g.strength_.assign(g.node_ids_.size(), 0.0);
    g.edges_.reserve(merged.size());
    for (const auto& [key, w] : merged) {
        g.edges_.push_back({key.first, key.second, w});
        g.adj_[key.first].push_back({key.second, w});
        g.adj_[key.second].push_back({key.first, w});
        g.strength_[key.first] += w;
        g.strength_[key.second] += w;
        g.total_weight_ += w;
    }
    for (auto& adj : g.adj_)
        std::sort(adj.begin(), adj.end(),
                  [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    return g;
}

bool UndirectedGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
    const auto& adj = adj_[a];
    auto it = std::lower_bound(adj.begin(), adj.end(), b,
                               [](const Neighbor& n, std::uint32_t v) { return n.node < v; });
    return it != adj.end() && it->node == b;
}

double UndirectedGraph::edge_weight(std::uint32_t a, std::uint32_t b) const {
    const auto& adj = adj_[a];
    auto it = std::lower_bound(adj.begin(), adj.end(), b,
                               [](const Neighbor& n, std::uint32_t v) { return n.node < v; });
    return (it != adj.end() && it->node == b) ? it->weight : 0.0;
}

std::int64_t UndirectedGraph::node_index(const std::string& id) const {
    auto it = lookup_.find(id);
    return it == lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

UndirectedGraph UndirectedGraph::induced_subgraph(const std::unordered_set<std::string>& ids) const {
    std::vector<bool> keep(node_ids_.size(), false);
    for (const auto& id : ids) {
        const std::int64_t idx = node_index(id);
        if (idx < 0) throw DataError("unknown node id in subgraph request: " + id);
        keep[static_cast<std::size_t>(idx)] = true;
    }
    std::vector<std::string> sub_ids;
    std::vector<std::uint32_t> remap(node_ids_.size(), 0);
    for (std::uint32_t i = 0; i < node_ids_.size(); ++i) {
        if (keep[i]) {
            remap[i] = static_cast<std::uint32_t>(sub_ids.size());
            sub_ids.push_back(node_ids_[i]);
        }
    }
    std::vector<Edge> sub_edges;
    for (const auto& e : edges_) {
        if (keep[e.a] && keep[e.b]) sub_edges.push_back({remap[e.a], remap[e.b], e.weight});
    }
    return from_edges(std::move(sub_ids), std::move(sub_edges));
}

}  // namespace semnet

#include "semnet/projection/project.hpp"

namespace semnet {

VMotifCounts count_vmotifs(const BipartiteGraph& g, BipartiteGraph::Layer layer) {
    VMotifCounts result;
    result.layer = layer;
    const std::size_t opposite =
        layer == BipartiteGraph::Layer::Top ? g.bottom_count() : g.top_count();
    for (std::uint32_t shared = 0; shared < opposite; ++shared) {
        const auto& members = layer == BipartiteGraph::Layer::Top ? g.bottom_adjacency(shared)
                                                                  : g.top_adjacency(shared);
        for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y)
                ++result.counts[VMotifCounts::key(members[x], members[y])];
    }
    return result;
}

}  // namespace semnet

#include "semnet/graph/partition.hpp"

#include <unordered_map>

namespace semnet {

Partition Partition::singletons(std::size_t n) {
    Partition p;
    p.community_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.community_of[i] = static_cast<std::uint32_t>(i);
    p.community_count = static_cast<std::uint32_t>(n);
    return p;
}

void Partition::normalize() {
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    remap.reserve(community_of.size());
    for (auto& c : community_of) {
        auto [it, inserted] = remap.emplace(c, static_cast<std::uint32_t>(remap.size()));
        c = it->second;
    }
    community_count = static_cast<std::uint32_t>(remap.size());
}

std::vector<std::vector<std::uint32_t>> Partition::members() const {
    std::vector<std::vector<std::uint32_t>> out(community_count);
    for (std::uint32_t i = 0; i < community_of.size(); ++i)
        out[community_of[i]].push_back(i);
    return out;
}

}  // namespace semnet

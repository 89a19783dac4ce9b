#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace semnet {

// Community assignment over dense node indices. Community identifiers are
// dense integers starting at 0.
struct Partition {
    std::vector<std::uint32_t> community_of;
    std::uint32_t community_count = 0;

    static Partition singletons(std::size_t n);

    // Renumbers community ids to 0..k-1 in order of first appearance.
    void normalize();

    std::vector<std::vector<std::uint32_t>> members() const;
};

// Outcome of repeated seeded label propagation runs. `final_label` is empty
// for nodes never reached by any label. `frequencies[i]` counts the label of
// node i at the end of each run; the empty string records unlabeled runs, so
// counts always sum to the number of runs.
struct NodeLabeling {
    std::vector<std::string> final_label;
    std::vector<std::map<std::string, std::uint32_t>> frequencies;
    std::vector<bool> is_seed;
    std::uint32_t runs = 0;
};

}  // namespace semnet

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "semnet/graph/partition.hpp"
#include "semnet/graph/undirected.hpp"

namespace semnet {

struct LabelPropagationOptions {
    std::uint32_t runs = 500;
    std::uint64_t rng_seed = 0;
    unsigned threads = 1;
    std::uint32_t max_sweeps = 1000;
};

// Seeded label propagation with repeated randomized runs. Per run: non-seed
// nodes adopt the weighted majority label of their neighbors in a seeded
// random order; a tie removes one random incident edge of the node from that
// run's working copy and re-evaluates; the run ends when a full sweep changes
// nothing. Seed nodes never change label. Runs aggregate into per-node label
// frequencies (the empty string records runs that left a node unlabeled) and
// each node's final label is its most frequent real label, ties broken
// lexicographically. Runs are independent and execute in parallel, each on a
// derived sub-seed, so results do not depend on the thread count.
NodeLabeling seeded_label_propagation(const UndirectedGraph& g,
                                      const std::map<std::string, std::string>& seeds,
                                      const LabelPropagationOptions& options = {});

}  // namespace semnet

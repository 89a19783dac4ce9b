#pragma once

#include <cstdint>
#include <vector>

#include "semnet/community/modularity.hpp"
#include "semnet/graph/partition.hpp"

namespace semnet {

struct LouvainResult {
    Partition partition;
    double modularity = 0.0;
    std::uint32_t passes = 0;
    std::vector<double> q_trace;  // Q after each pass, non-decreasing
};

struct LouvainOptions {
    std::uint32_t max_sweeps_per_level = 1000;
    double min_gain = 1e-12;
};

// Two-phase greedy modularity maximization against the context's fixed null
// model. The local-move phase relocates blocks (original nodes on the first
// pass, whole communities afterwards) in a seeded random order; aggregation
// freezes the current communities into blocks. Deterministic for a fixed
// seed.
LouvainResult louvain(const ModularityContext& ctx, std::uint64_t rng_seed,
                      const LouvainOptions& options = {});

}  // namespace semnet

#include "semnet/community/louvain.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "semnet/core/rng.hpp"

namespace semnet {

namespace {

// A block is the unit moved by the local phase: a single node on the first
// pass, a frozen community afterwards. Class counts are kept sparse per
// block and dense per community, so a null-model mass between a block and a
// community costs O(block classes).
struct Block {
    std::vector<std::uint32_t> nodes;
    std::vector<std::pair<std::uint32_t, double>> class_cnt;
    double self_pmass = 0.0;  // ordered null-model mass of the block with itself
};

class Level {
public:
    Level(const ModularityContext& ctx, std::vector<Block> blocks)
        : ctx_(ctx), d_(ctx.class_count()), blocks_(std::move(blocks)) {
        const auto& g = ctx_.graph();
        block_of_node_.resize(g.node_count());
        for (std::uint32_t b = 0; b < blocks_.size(); ++b)
            for (std::uint32_t node : blocks_[b].nodes) block_of_node_[node] = b;

        // Inter-block adjacency from the original edges; intra-block weight
        // stays inside the block and never enters a move gain.
        std::vector<std::map<std::uint32_t, double>> adj(blocks_.size());
        for (const auto& e : g.edges()) {
            const std::uint32_t ba = block_of_node_[e.a], bb = block_of_node_[e.b];
            if (ba == bb) continue;
            adj[ba][bb] += e.weight;
            adj[bb][ba] += e.weight;
        }
        block_adj_.resize(blocks_.size());
        for (std::uint32_t b = 0; b < blocks_.size(); ++b)
            block_adj_[b].assign(adj[b].begin(), adj[b].end());

        comm_of_block_.resize(blocks_.size());
        comm_cnt_.assign(blocks_.size() * d_, 0.0);
        comm_field_.assign(blocks_.size() * d_, 0.0);
        for (std::uint32_t b = 0; b < blocks_.size(); ++b) {
            comm_of_block_[b] = b;
            add_to_community(b, b);
        }
    }

    bool run_local_moves(Rng& rng, const LouvainOptions& opts) {
        std::vector<std::uint32_t> order(blocks_.size());
        for (std::uint32_t b = 0; b < order.size(); ++b) order[b] = b;
        rng.shuffle(order);  // one seeded shuffle per pass

        std::vector<double> weight_to(blocks_.size(), 0.0);
        std::vector<std::uint32_t> touched;
        bool any_move = false;
        for (std::uint32_t sweep = 0; sweep < opts.max_sweeps_per_level; ++sweep) {
            bool moved = false;
            for (std::uint32_t b : order) {
                const std::uint32_t source = comm_of_block_[b];
                touched.clear();
                for (const auto& [nb, w] : block_adj_[b]) {
                    const std::uint32_t c = comm_of_block_[nb];
                    if (weight_to[c] == 0.0) touched.push_back(c);
                    weight_to[c] += w;
                }
                std::sort(touched.begin(), touched.end());

                const double base = weight_to[source] - pmass_to_comm(b, source) +
                                    blocks_[b].self_pmass;
                double best_gain = 0.0;
                std::uint32_t best_comm = source;
                for (std::uint32_t target : touched) {
                    if (target == source) continue;
                    const double value = weight_to[target] - pmass_to_comm(b, target);
                    const double gain = value - base;
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_comm = target;
                    }
                }
                for (std::uint32_t c : touched) weight_to[c] = 0.0;
                if (best_comm != source && best_gain > opts.min_gain) {
                    remove_from_community(b, source);
                    add_to_community(b, best_comm);
                    comm_of_block_[b] = best_comm;
                    moved = true;
                    any_move = true;
                }
            }
            if (!moved) break;
        }
        return any_move;
    }

    Partition node_partition() const {
        Partition p;
        p.community_of.resize(block_of_node_.size());
        for (std::uint32_t node = 0; node < block_of_node_.size(); ++node)
            p.community_of[node] = comm_of_block_[block_of_node_[node]];
        p.community_count = static_cast<std::uint32_t>(blocks_.size());
        p.normalize();
        return p;
    }

    // Freezes the current communities into the next level's blocks.
    std::vector<Block> aggregate(const ModularityContext& ctx) const {
        std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
        for (std::uint32_t b = 0; b < blocks_.size(); ++b)
            groups[comm_of_block_[b]].push_back(b);
        std::vector<Block> next;
        next.reserve(groups.size());
        for (const auto& [comm, members] : groups) {
            Block merged;
            std::map<std::uint32_t, double> cnt;
            for (std::uint32_t b : members) {
                merged.nodes.insert(merged.nodes.end(), blocks_[b].nodes.begin(),
                                    blocks_[b].nodes.end());
                for (const auto& [cls, c] : blocks_[b].class_cnt) cnt[cls] += c;
            }
            merged.class_cnt.assign(cnt.begin(), cnt.end());
            for (const auto& [ca, na] : merged.class_cnt)
                for (const auto& [cb, nb] : merged.class_cnt)
                    merged.self_pmass += na * nb * ctx.class_value(ca, cb);
            next.push_back(std::move(merged));
        }
        return next;
    }

private:
    double pmass_to_comm(std::uint32_t b, std::uint32_t comm) const {
        const double* field = comm_field_.data() + static_cast<std::size_t>(comm) * d_;
        double s = 0.0;
        for (const auto& [cls, c] : blocks_[b].class_cnt) s += c * field[cls];
        return s;
    }

    void add_to_community(std::uint32_t b, std::uint32_t comm) {
        double* cnt = comm_cnt_.data() + static_cast<std::size_t>(comm) * d_;
        double* field = comm_field_.data() + static_cast<std::size_t>(comm) * d_;
        for (const auto& [cls, c] : blocks_[b].class_cnt) {
            cnt[cls] += c;
            for (std::size_t r = 0; r < d_; ++r)
                field[r] += c * ctx_.class_value(static_cast<std::uint32_t>(r), cls);
        }
    }

    void remove_from_community(std::uint32_t b, std::uint32_t comm) {
        double* cnt = comm_cnt_.data() + static_cast<std::size_t>(comm) * d_;
        double* field = comm_field_.data() + static_cast<std::size_t>(comm) * d_;
        for (const auto& [cls, c] : blocks_[b].class_cnt) {
            cnt[cls] -= c;
            for (std::size_t r = 0; r < d_; ++r)
                field[r] -= c * ctx_.class_value(static_cast<std::uint32_t>(r), cls);
        }
    }

    const ModularityContext& ctx_;
    std::size_t d_;
    std::vector<Block> blocks_;
    std::vector<std::uint32_t> block_of_node_;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> block_adj_;
    std::vector<std::uint32_t> comm_of_block_;
    std::vector<double> comm_cnt_;    // community x class
    std::vector<double> comm_field_;  // community x class: sum_b cnt[b] P(a,b)
};

}  // namespace

LouvainResult louvain(const ModularityContext& ctx, std::uint64_t rng_seed,
                      const LouvainOptions& options) {
    const auto& g = ctx.graph();
    Rng rng(rng_seed);

    std::vector<Block> blocks(g.node_count());
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        blocks[i].nodes = {i};
        blocks[i].class_cnt = {{ctx.class_of(i), 1.0}};
        blocks[i].self_pmass = ctx.class_value(ctx.class_of(i), ctx.class_of(i));
    }

    LouvainResult result;
    double previous_q = -std::numeric_limits<double>::infinity();
    for (;;) {
        Level level(ctx, std::move(blocks));
        level.run_local_moves(rng, options);
        Partition p = level.node_partition();
        const double q = ctx.modularity(p);
        // Incremental gains and the from-scratch Q can disagree by rounding
        // noise; a pass that fails to improve ends the run and never lowers
        // the recorded trace.
        if (q < previous_q) break;
        ++result.passes;
        result.q_trace.push_back(q);
        result.partition = std::move(p);
        result.modularity = q;
        if (q <= previous_q + options.min_gain) break;
        previous_q = q;
        blocks = level.aggregate(ctx);
        if (blocks.size() <= 1) break;
    }
    return result;
}

}  // namespace semnet

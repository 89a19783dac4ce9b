#include "semnet/community/label_propagation.hpp"

#include <algorithm>

#include "semnet/core/errors.hpp"
#include "semnet/core/parallel.hpp"
#include "semnet/core/rng.hpp"

namespace semnet {

namespace {

constexpr std::int32_t kUnlabeled = -1;

struct RunScratch {
    std::vector<std::vector<UndirectedGraph::Neighbor>> adj;
    std::vector<std::int32_t> labels;
    std::vector<double> tally;
    std::vector<std::int32_t> touched;
};

void remove_random_incident_edge(RunScratch& s, std::uint32_t node, Rng& rng) {
    auto& incident = s.adj[node];
    const std::size_t pick = rng.next_below(incident.size());
    const std::uint32_t other = incident[pick].node;
    incident.erase(incident.begin() + static_cast<std::ptrdiff_t>(pick));
    auto& back = s.adj[other];
    for (std::size_t k = 0; k < back.size(); ++k) {
        if (back[k].node == node) {
            back.erase(back.begin() + static_cast<std::ptrdiff_t>(k));
            break;
        }
    }
}

// Weighted majority label among the node's current neighbors; ties remove a
// random incident edge and retally. Returns kUnlabeled when no labeled
// neighbor remains.
std::int32_t majority_label(RunScratch& s, std::uint32_t node, Rng& rng) {
    for (;;) {
        for (std::int32_t l : s.touched) s.tally[static_cast<std::size_t>(l)] = 0.0;
        s.touched.clear();
        for (const auto& nb : s.adj[node]) {
            const std::int32_t l = s.labels[nb.node];
            if (l == kUnlabeled) continue;
            if (s.tally[static_cast<std::size_t>(l)] == 0.0) s.touched.push_back(l);
            s.tally[static_cast<std::size_t>(l)] += nb.weight;
        }
        if (s.touched.empty()) return kUnlabeled;
        double best = 0.0;
        int winners = 0;
        std::int32_t winner = kUnlabeled;
        for (std::int32_t l : s.touched) {
            const double w = s.tally[static_cast<std::size_t>(l)];
            if (w > best) {
                best = w;
                winner = l;
                winners = 1;
            } else if (w == best) {
                ++winners;
            }
        }
        if (winners == 1) return winner;
        remove_random_incident_edge(s, node, rng);
    }
}

}  // namespace

NodeLabeling seeded_label_propagation(const UndirectedGraph& g,
                                      const std::map<std::string, std::string>& seeds,
                                      const LabelPropagationOptions& options) {
    if (seeds.empty()) throw DataError("label propagation: seed set is empty");
    if (options.runs == 0) throw ConfigError("label propagation: runs must be >= 1");

    // Intern labels; seed map iteration is ordered, so ids are deterministic.
    std::vector<std::string> label_names;
    std::map<std::string, std::int32_t> label_ids;
    std::vector<std::int32_t> seed_label(g.node_count(), kUnlabeled);
    std::vector<bool> is_seed(g.node_count(), false);
    for (const auto& [node_id, label] : seeds) {
        const std::int64_t idx = g.node_index(node_id);
        if (idx < 0) throw DataError("label propagation: unknown seed node " + node_id);
        auto [it, inserted] = label_ids.emplace(label, static_cast<std::int32_t>(label_names.size()));
        if (inserted) label_names.push_back(label);
        seed_label[static_cast<std::size_t>(idx)] = it->second;
        is_seed[static_cast<std::size_t>(idx)] = true;
    }

    std::vector<std::uint32_t> movable;
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        if (!is_seed[i]) movable.push_back(i);

    // Per-run final labels, filled independently and reduced in run order.
    std::vector<std::vector<std::int32_t>> outcomes(options.runs);
    parallel_chunks(options.runs, 1, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t run = begin; run < end; ++run) {
            Rng rng(derive_seed(options.rng_seed, run));
            RunScratch s;
            s.adj.resize(g.node_count());
            for (std::uint32_t i = 0; i < g.node_count(); ++i) s.adj[i] = g.adjacency(i);
            s.labels = seed_label;
            s.tally.assign(label_names.size(), 0.0);

            std::vector<std::uint32_t> order = movable;
            for (std::uint32_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
                rng.shuffle(order);
                bool changed = false;
                for (std::uint32_t node : order) {
                    const std::int32_t winner = majority_label(s, node, rng);
                    if (winner != kUnlabeled && winner != s.labels[node]) {
                        s.labels[node] = winner;
                        changed = true;
                    }
                }
                if (!changed) break;
            }
            outcomes[run] = std::move(s.labels);
        }
    });

    NodeLabeling result;
    result.runs = options.runs;
    result.is_seed = is_seed;
    result.frequencies.resize(g.node_count());
    result.final_label.assign(g.node_count(), std::string{});
    const std::string unlabeled_key;
    for (std::uint32_t run = 0; run < options.runs; ++run) {
        for (std::uint32_t i = 0; i < g.node_count(); ++i) {
            const std::int32_t l = outcomes[run][i];
            const std::string& name =
                l == kUnlabeled ? unlabeled_key : label_names[static_cast<std::size_t>(l)];
            ++result.frequencies[i][name];
        }
    }
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        std::uint32_t best = 0;
        for (const auto& [name, count] : result.frequencies[i]) {
            if (name.empty()) continue;
            // std::map iterates labels in lexicographic order, so a strict
            // comparison breaks frequency ties toward the smaller label.
            if (count > best) {
                best = count;
                result.final_label[i] = name;
            }
        }
    }
    return result;
}

}  // namespace semnet

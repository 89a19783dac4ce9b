#include <deque>

#include "semnet/analytics/analytics.hpp"
#include "semnet/core/parallel.hpp"

namespace semnet {

namespace {

constexpr std::size_t kSourceBlock = 64;

// One-source BFS accumulation (Brandes): dependencies delta flow backwards
// through the shortest-path DAG.
void accumulate_from_source(const UndirectedGraph& g, std::uint32_t s, std::vector<int>& dist,
                            std::vector<double>& sigma, std::vector<double>& delta,
                            std::vector<std::uint32_t>& order, std::vector<double>& out) {
    const std::size_t n = g.node_count();
    dist.assign(n, -1);
    sigma.assign(n, 0.0);
    delta.assign(n, 0.0);
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    std::deque<std::uint32_t> queue{s};
    while (!queue.empty()) {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (const auto& nb : g.adjacency(v)) {
            if (dist[nb.node] < 0) {
                dist[nb.node] = dist[v] + 1;
                queue.push_back(nb.node);
            }
            if (dist[nb.node] == dist[v] + 1) sigma[nb.node] += sigma[v];
        }
    }
    for (std::size_t k = order.size(); k-- > 1;) {
        const std::uint32_t w = order[k];
        for (const auto& nb : g.adjacency(w)) {
            if (dist[nb.node] == dist[w] - 1)
                delta[nb.node] += sigma[nb.node] / sigma[w] * (1.0 + delta[w]);
        }
        if (w != s) out[w] += delta[w];
    }
}

}  // namespace

std::vector<double> betweenness(const UndirectedGraph& g, unsigned threads) {
    const std::size_t n = g.node_count();
    const std::size_t n_blocks = (n + kSourceBlock - 1) / kSourceBlock;
    std::vector<std::vector<double>> block_sums(n_blocks);

    parallel_chunks(n, kSourceBlock, threads, [&](std::size_t begin, std::size_t end) {
        const std::size_t block = begin / kSourceBlock;
        block_sums[block].assign(n, 0.0);
        std::vector<int> dist;
        std::vector<double> sigma, delta;
        std::vector<std::uint32_t> order;
        for (std::size_t s = begin; s < end; ++s)
            accumulate_from_source(g, static_cast<std::uint32_t>(s), dist, sigma, delta, order,
                                   block_sums[block]);
    });

    // Reduce in block order: independent of the thread count.
    std::vector<double> result(n, 0.0);
    for (const auto& partial : block_sums)
        for (std::size_t v = 0; v < n; ++v) result[v] += partial[v];
    // each unordered pair was accumulated from both endpoints
    for (double& v : result) v *= 0.5;
    return result;
}

std::map<std::string, double> betweenness_map(
    const UndirectedGraph& g, const std::optional<std::unordered_set<std::string>>& subset,
    unsigned threads) {
    const std::vector<double> values = betweenness(g, threads);
    std::map<std::string, double> out;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        if (subset && !subset->count(g.node_id(i))) continue;
        out.emplace(g.node_id(i), values[i]);
    }
    return out;
}

}  // namespace semnet

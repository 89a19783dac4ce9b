#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semnet/community/louvain.hpp"
#include "semnet/community/modularity.hpp"
#include "semnet/maxent/ucm.hpp"

using namespace semnet;

namespace {

UndirectedGraph make_graph(std::vector<std::string> ids,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    std::vector<UndirectedGraph::Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({a, b, 1.0});
    return UndirectedGraph::from_edges(std::move(ids), std::move(edges));
}

std::vector<std::string> node_names(std::size_t n) {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = "n" + std::to_string(i);
    return ids;
}

Partition from_assignment(std::vector<std::uint32_t> assignment) {
    Partition p;
    p.community_of = std::move(assignment);
    p.normalize();
    return p;
}

// Two 5-cliques joined by a single bridge edge.
UndirectedGraph two_cliques_with_bridge() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < 5; ++i)
        for (std::uint32_t j = i + 1; j < 5; ++j) pairs.push_back({i, j});
    for (std::uint32_t i = 5; i < 10; ++i)
        for (std::uint32_t j = i + 1; j < 10; ++j) pairs.push_back({i, j});
    pairs.push_back({4, 5});
    return make_graph(node_names(10), pairs);
}

UndirectedGraph two_triangles() {
    return make_graph(node_names(6), {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

}  // namespace

TEST_CASE("modularity: whole-graph community under Chung-Lu is exactly zero") {
    auto g = oracle::random_undirected(30, 0.2, 3);
    auto ctx = ModularityContext::chung_lu(g);
    Partition all_one = from_assignment(std::vector<std::uint32_t>(g.node_count(), 0));
    CHECK(ctx.modularity(all_one) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("modularity: two disjoint edges split into their pairs scores 0.5") {
    auto g = make_graph({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
    auto ctx = ModularityContext::chung_lu(g);
    CHECK(ctx.modularity(from_assignment({0, 0, 1, 1})) == doctest::Approx(0.5));
}

TEST_CASE("modularity: singleton partition equals minus the diagonal mass") {
    auto g = make_graph({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}});
    auto ctx = ModularityContext::chung_lu(g);
    Partition singles = Partition::singletons(4);
    double diag = 0.0;
    for (std::uint32_t i = 0; i < 4; ++i) diag += ctx.self_value(i);
    CHECK(ctx.modularity(singles) == doctest::Approx(-diag / (2.0 * g.total_weight())));
    CHECK(ctx.modularity(singles) <= 0.0);
    // excluding self-pairs, the singleton partition scores exactly zero
    auto ctx_nodiag = ModularityContext::chung_lu(g, false);
    CHECK(ctx_nodiag.modularity(singles) == doctest::Approx(0.0));
}

TEST_CASE("modularity: context pij matches the direct formulas") {
    auto g = oracle::random_undirected(25, 0.25, 9);
    auto cl = ModularityContext::chung_lu(g);
    const double two_m = 2.0 * g.total_weight();
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        for (std::uint32_t j = 0; j < g.node_count(); ++j)
            if (i != j)
                CHECK(cl.pij(i, j) == doctest::Approx(g.strength(i) * g.strength(j) / two_m));

    auto fit = solve_ucm(g);
    auto exact = ModularityContext::exact_ucm(g, fit);
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        for (std::uint32_t j = 0; j < g.node_count(); ++j)
            if (i != j) CHECK(exact.pij(i, j) == doctest::Approx(fit.probability(i, j)));
}

TEST_CASE("modularity: exact-UCM and Chung-Lu agree on a sparse random graph") {
    // mean degree ~6 at n = 500
    auto g = oracle::random_undirected(500, 6.0 / 499.0, 12);
    auto fit = solve_ucm(g);
    auto exact = ModularityContext::exact_ucm(g, fit);
    auto cl = ModularityContext::chung_lu(g);
    // same partition under both null models: a random coarse split
    Rng rng(4);
    std::vector<std::uint32_t> assignment(g.node_count());
    for (auto& c : assignment) c = static_cast<std::uint32_t>(rng.next_below(10));
    Partition p = from_assignment(std::move(assignment));
    CHECK(std::abs(exact.modularity(p) - cl.modularity(p)) <= 1e-3);
}

TEST_CASE("louvain: two cliques with a bridge recover the planted split") {
    auto g = two_cliques_with_bridge();
    auto ctx = ModularityContext::chung_lu(g);
    auto res = louvain(ctx, 17);
    REQUIRE(res.partition.community_count == 2);
    for (std::uint32_t i = 1; i < 5; ++i)
        CHECK(res.partition.community_of[i] == res.partition.community_of[0]);
    for (std::uint32_t i = 6; i < 10; ++i)
        CHECK(res.partition.community_of[i] == res.partition.community_of[5]);
    CHECK(res.partition.community_of[0] != res.partition.community_of[5]);

    // exhaustive oracle: the returned partition maximizes Q over all
    // partitions of the 10 nodes
    double best_q = 0.0;
    auto best = oracle::best_partition_exhaustive(
        10,
        [&](const std::vector<std::uint32_t>& rgs) {
            return ctx.modularity(from_assignment(rgs));
        },
        &best_q);
    CHECK(res.modularity == doctest::Approx(best_q).epsilon(1e-10));
    CHECK(from_assignment(best).community_of == res.partition.community_of);
}

TEST_CASE("louvain: single edge puts both endpoints together") {
    auto g = make_graph({"a", "b"}, {{0, 1}});
    auto ctx = ModularityContext::chung_lu(g);
    auto res = louvain(ctx, 1);
    CHECK(res.partition.community_of[0] == res.partition.community_of[1]);
}

TEST_CASE("louvain: disjoint triangles recover the components") {
    auto g = two_triangles();
    auto ctx = ModularityContext::chung_lu(g);
    auto res = louvain(ctx, 5);
    REQUIRE(res.partition.community_count == 2);
    CHECK(res.partition.community_of[0] == res.partition.community_of[1]);
    CHECK(res.partition.community_of[1] == res.partition.community_of[2]);
    CHECK(res.partition.community_of[3] == res.partition.community_of[4]);
    CHECK(res.partition.community_of[4] == res.partition.community_of[5]);

    double best_q = 0.0;
    oracle::best_partition_exhaustive(
        6,
        [&](const std::vector<std::uint32_t>& rgs) {
            return ctx.modularity(from_assignment(rgs));
        },
        &best_q);
    CHECK(res.modularity == doctest::Approx(best_q).epsilon(1e-10));
}

TEST_CASE("louvain: exact-UCM context recovers the same planted fixtures") {
    auto g = two_cliques_with_bridge();
    auto fit = solve_ucm(g);
    auto ctx = ModularityContext::exact_ucm(g, fit);
    auto res = louvain(ctx, 23);
    REQUIRE(res.partition.community_count == 2);
    CHECK(res.partition.community_of[0] != res.partition.community_of[9]);

    double best_q = 0.0;
    oracle::best_partition_exhaustive(
        10,
        [&](const std::vector<std::uint32_t>& rgs) {
            return ctx.modularity(from_assignment(rgs));
        },
        &best_q);
    CHECK(res.modularity == doctest::Approx(best_q).epsilon(1e-10));
}

TEST_CASE("louvain: Q trace is non-decreasing and final Q matches recomputation") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        auto g = oracle::random_undirected(80, 0.08, seed + 100);
        auto ctx = ModularityContext::chung_lu(g);
        auto res = louvain(ctx, seed);
        REQUIRE(!res.q_trace.empty());
        for (std::size_t k = 1; k < res.q_trace.size(); ++k)
            CHECK(res.q_trace[k] >= res.q_trace[k - 1]);
        CHECK(std::abs(res.modularity - ctx.modularity(res.partition)) <= 1e-10);
        CHECK(res.passes == res.q_trace.size());
    }
}

TEST_CASE("louvain: identical seed gives identical results, different seeds may differ") {
    auto g = oracle::random_undirected(60, 0.1, 55);
    auto ctx = ModularityContext::chung_lu(g);
    auto a = louvain(ctx, 42);
    auto b = louvain(ctx, 42);
    CHECK(a.partition.community_of == b.partition.community_of);
    CHECK(a.modularity == b.modularity);
    CHECK(a.q_trace == b.q_trace);
}

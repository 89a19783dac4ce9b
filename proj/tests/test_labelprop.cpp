#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semnet/community/label_propagation.hpp"
#include "semnet/core/errors.hpp"

using namespace semnet;

namespace {

UndirectedGraph make_graph(std::vector<std::string> ids,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    std::vector<UndirectedGraph::Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({a, b, 1.0});
    return UndirectedGraph::from_edges(std::move(ids), std::move(edges));
}

}  // namespace

TEST_CASE("label propagation: one seed per component labels everything") {
    // two disjoint paths with one seed each
    auto g = make_graph({"s1", "x1", "x2", "s2", "y1", "y2"},
                        {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    LabelPropagationOptions opts;
    opts.runs = 50;
    opts.rng_seed = 7;
    auto res = seeded_label_propagation(g, {{"s1", "A"}, {"s2", "B"}}, opts);
    CHECK(res.final_label[0] == "A");
    CHECK(res.final_label[1] == "A");
    CHECK(res.final_label[2] == "A");
    CHECK(res.final_label[3] == "B");
    CHECK(res.final_label[4] == "B");
    CHECK(res.final_label[5] == "B");
    // full coverage: frequency equals the run count
    CHECK(res.frequencies[1].at("A") == 50);
    CHECK(res.frequencies[4].at("B") == 50);
}

TEST_CASE("label propagation: symmetric path splits about 50/50 over runs") {
    auto g = make_graph({"s1", "x", "s2"}, {{0, 1}, {1, 2}});
    LabelPropagationOptions opts;
    opts.runs = 500;
    opts.rng_seed = 11;
    auto res = seeded_label_propagation(g, {{"s1", "A"}, {"s2", "B"}}, opts);
    const double a = res.frequencies[1].count("A") ? res.frequencies[1].at("A") : 0;
    const double b = res.frequencies[1].count("B") ? res.frequencies[1].at("B") : 0;
    CHECK(a + b == 500);
    // binomial(500, 1/2): 4 sigma ~ 44.7
    CHECK(std::abs(a - 250.0) <= 4.0 * std::sqrt(500.0 * 0.25));
    // deterministic lexicographic tie-break applies only on exact frequency
    // ties; either way the final label is the more frequent of A and B
    CHECK((res.final_label[1] == (a >= b ? "A" : "B")));
}

TEST_CASE("label propagation: isolated non-seed node stays unlabeled") {
    auto g = make_graph({"s", "x", "alone"}, {{0, 1}});
    LabelPropagationOptions opts;
    opts.runs = 20;
    opts.rng_seed = 3;
    auto res = seeded_label_propagation(g, {{"s", "A"}}, opts);
    CHECK(res.final_label[2].empty());
    CHECK(res.frequencies[2].at("") == 20);
    CHECK(res.final_label[1] == "A");
}

TEST_CASE("label propagation: seeds are immutable in every run and the aggregate") {
    auto g = oracle::random_undirected(40, 0.15, 5);
    std::map<std::string, std::string> seeds{{"n0", "RED"}, {"n1", "BLUE"}, {"n2", "RED"}};
    LabelPropagationOptions opts;
    opts.runs = 100;
    opts.rng_seed = 13;
    auto res = seeded_label_propagation(g, seeds, opts);
    CHECK(res.final_label[0] == "RED");
    CHECK(res.final_label[1] == "BLUE");
    CHECK(res.final_label[2] == "RED");
    CHECK(res.frequencies[0].at("RED") == 100);
    CHECK(res.frequencies[1].at("BLUE") == 100);
    CHECK(res.is_seed[0]);
    CHECK_FALSE(res.is_seed[5]);
}

TEST_CASE("label propagation: frequency counts per node sum to the run count") {
    auto g = oracle::random_undirected(30, 0.1, 21);
    LabelPropagationOptions opts;
    opts.runs = 64;
    opts.rng_seed = 17;
    auto res = seeded_label_propagation(g, {{"n0", "A"}, {"n7", "B"}}, opts);
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
        std::uint32_t total = 0;
        for (const auto& [label, count] : res.frequencies[i]) total += count;
        CHECK(total == opts.runs);
    }
}

TEST_CASE("label propagation: identical seed reproduces identical output") {
    auto g = oracle::random_undirected(35, 0.12, 31);
    std::map<std::string, std::string> seeds{{"n3", "A"}, {"n8", "B"}, {"n20", "C"}};
    LabelPropagationOptions opts;
    opts.runs = 40;
    opts.rng_seed = 77;
    auto a = seeded_label_propagation(g, seeds, opts);
    auto b = seeded_label_propagation(g, seeds, opts);
    CHECK(a.final_label == b.final_label);
    CHECK(a.frequencies == b.frequencies);
}

TEST_CASE("label propagation: thread count does not change the outcome") {
    auto g = oracle::random_undirected(35, 0.12, 31);
    std::map<std::string, std::string> seeds{{"n3", "A"}, {"n8", "B"}};
    LabelPropagationOptions one;
    one.runs = 32;
    one.rng_seed = 5;
    one.threads = 1;
    LabelPropagationOptions four = one;
    four.threads = 4;
    auto a = seeded_label_propagation(g, seeds, one);
    auto b = seeded_label_propagation(g, seeds, four);
    CHECK(a.final_label == b.final_label);
    CHECK(a.frequencies == b.frequencies);
}

TEST_CASE("label propagation: rejects empty or unknown seeds") {
    auto g = make_graph({"a", "b"}, {{0, 1}});
    CHECK_THROWS_AS(seeded_label_propagation(g, {}, {}), DataError);
    CHECK_THROWS_AS(seeded_label_propagation(g, {{"zzz", "A"}}, {}), DataError);
}

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/maxent/bicm.hpp"
#include "semnet/maxent/ucm.hpp"

using namespace semnet;

namespace {

BipartiteGraph make_bipartite(std::size_t nt, std::size_t nb,
                              std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::vector<std::string> top(nt), bottom(nb);
    for (std::size_t i = 0; i < nt; ++i) top[i] = "t" + std::to_string(i);
    for (std::size_t a = 0; a < nb; ++a) bottom[a] = "b" + std::to_string(a);
    return BipartiteGraph::from_edges(std::move(top), std::move(bottom), edges);
}

UndirectedGraph make_graph(std::vector<std::string> ids,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    std::vector<UndirectedGraph::Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({a, b, 1.0});
    return UndirectedGraph::from_edges(std::move(ids), std::move(edges));
}

// Test-side bipartite log-likelihood from raw multipliers, for the gradient
// check; shares nothing with BicmFit.
double raw_log_likelihood(const BipartiteGraph& g, const std::vector<double>& eta,
                          const std::vector<double>& theta) {
    double ll = 0.0;
    for (std::uint32_t i = 0; i < g.top_count(); ++i) {
        for (std::uint32_t a = 0; a < g.bottom_count(); ++a) {
            const double z = std::exp(-eta[i] - theta[a]);
            const double p = z / (1.0 + z);
            ll += g.has_edge(i, a) ? std::log(p) : std::log1p(-p);
        }
    }
    return ll;
}

}  // namespace

TEST_CASE("bicm: symmetric 2x2 graph solves to p = 0.5 everywhere") {
    auto g = make_bipartite(2, 2, {{0, 0}, {1, 1}});
    auto fit = solve_bicm(g);
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t a = 0; a < 2; ++a)
            CHECK(fit.probability(i, a) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("bicm: empty graph gives all-zero probabilities") {
    auto g = make_bipartite(3, 4, {});
    auto fit = solve_bicm(g);
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t a = 0; a < 4; ++a) CHECK(fit.probability(i, a) == 0.0);
    CHECK(fit.residual() == 0.0);
}

TEST_CASE("bicm: saturated top node pins its row and cascades") {
    auto g = make_bipartite(2, 2, {{0, 0}, {0, 1}, {1, 0}});
    auto fit = solve_bicm(g);
    CHECK(fit.probability(0, 0) == 1.0);
    CHECK(fit.probability(0, 1) == 1.0);
    CHECK(fit.probability(1, 0) == 1.0);
    CHECK(fit.probability(1, 1) == 0.0);
    CHECK(fit.top_multiplier(0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("bicm: constraint satisfaction on random graphs") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        auto g = oracle::random_bipartite(40, 60, 0.08 * static_cast<double>(seed - 10), seed);
        auto fit = solve_bicm(g);
        CHECK(fit.residual() <= 1e-8);
        double max_violation = 0.0;
        for (std::uint32_t i = 0; i < g.top_count(); ++i)
            max_violation = std::max(max_violation, std::abs(fit.expected_top_degree(i) -
                                                             static_cast<double>(g.top_degree(i))));
        for (std::uint32_t a = 0; a < g.bottom_count(); ++a)
            max_violation = std::max(max_violation,
                                     std::abs(fit.expected_bottom_degree(a) -
                                              static_cast<double>(g.bottom_degree(a))));
        CHECK(max_violation <= 1e-6);
    }
}

TEST_CASE("bicm: equal degrees receive identical multipliers") {
    auto g = oracle::random_bipartite(30, 40, 0.2, 99);
    auto fit = solve_bicm(g);
    for (std::uint32_t i = 0; i < g.top_count(); ++i)
        for (std::uint32_t j = i + 1; j < g.top_count(); ++j)
            if (g.top_degree(i) == g.top_degree(j))
                CHECK(std::abs(fit.top_multiplier(i) - fit.top_multiplier(j)) <= 1e-10);
}

TEST_CASE("bicm: likelihood trace is non-decreasing across sweeps") {
    SolveOptions opts;
    opts.track_likelihood = true;
    for (std::uint64_t seed : {3u, 4u}) {
        auto g = oracle::random_bipartite(25, 35, 0.15, seed);
        auto fit = solve_bicm(g, opts);
        const auto& trace = fit.likelihood_trace();
        REQUIRE(trace.size() >= 2);
        for (std::size_t s = 1; s < trace.size(); ++s)
            CHECK(trace[s] >= trace[s - 1] - 1e-12);
    }
}

TEST_CASE("bicm: analytic gradient matches central finite differences") {
    auto g = oracle::random_bipartite(8, 11, 0.35, 21);
    // Arbitrary (non-solved) multipliers: the identity d L / d eta_i =
    // <k_i> - k_i must hold everywhere.
    Rng rng(5);
    std::vector<double> eta(g.top_count()), theta(g.bottom_count());
    for (auto& e : eta) e = rng.next_double() * 2.0 - 1.0;
    for (auto& t : theta) t = rng.next_double() * 2.0 - 1.0;

    const double h = 1e-5;
    for (std::uint32_t i = 0; i < g.top_count(); ++i) {
        double expected_degree = 0.0;
        for (std::uint32_t a = 0; a < g.bottom_count(); ++a) {
            const double z = std::exp(-eta[i] - theta[a]);
            expected_degree += z / (1.0 + z);
        }
        const double analytic = expected_degree - static_cast<double>(g.top_degree(i));
        auto eta_hi = eta, eta_lo = eta;
        eta_hi[i] += h;
        eta_lo[i] -= h;
        const double fd =
            (raw_log_likelihood(g, eta_hi, theta) - raw_log_likelihood(g, eta_lo, theta)) / (2 * h);
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
    }
}

TEST_CASE("bicm: non-convergence raises with achieved residual") {
    auto g = oracle::random_bipartite(30, 45, 0.12, 7);
    SolveOptions opts;
    opts.max_iterations = 1;
    try {
        solve_bicm(g, opts);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.residual > 0.0);
    }
}

TEST_CASE("bicm: empty layer is rejected") {
    std::vector<std::string> none;
    auto g = BipartiteGraph::from_edges(none, {"b0"}, {});
    CHECK_THROWS_AS(solve_bicm(g), DataError);
}

TEST_CASE("bicm: json round trip reproduces probabilities") {
    auto g = oracle::random_bipartite(15, 20, 0.25, 31);
    auto fit = solve_bicm(g);
    auto j = fit.to_json();
    auto fit2 = BicmFit::from_json(j);
    for (std::uint32_t i = 0; i < g.top_count(); ++i)
        for (std::uint32_t a = 0; a < g.bottom_count(); ++a)
            CHECK(fit.probability(i, a) == fit2.probability(i, a));
    CHECK(fit2.iterations() == fit.iterations());
    CHECK(fit2.residual() == fit.residual());
}

TEST_CASE("ucm: 4-cycle solves to P = 2/3 with multiplier sqrt(2)") {
    auto g = make_graph({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto fit = solve_ucm(g);
    for (std::uint32_t i = 0; i < 4; ++i) {
        CHECK(fit.multiplier(i) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
        for (std::uint32_t j = 0; j < 4; ++j)
            if (i != j) CHECK(fit.probability(i, j) == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
    }
}

TEST_CASE("ucm: edgeless graph gives all-zero probabilities") {
    auto g = make_graph({"a", "b", "c"}, {});
    auto fit = solve_ucm(g);
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 0; j < 3; ++j)
            if (i != j) CHECK(fit.probability(i, j) == 0.0);
}

TEST_CASE("ucm: path a-b-c pins the saturated middle node") {
    auto g = make_graph({"a", "b", "c"}, {{0, 1}, {1, 2}});
    auto fit = solve_ucm(g);
    CHECK(fit.probability(0, 1) == 1.0);
    CHECK(fit.probability(1, 2) == 1.0);
    CHECK(fit.probability(0, 2) == 0.0);
}

TEST_CASE("ucm: constraint satisfaction and class equality on random graphs") {
    for (std::uint64_t seed : {41u, 42u}) {
        auto g = oracle::random_undirected(60, 0.1, seed);
        auto fit = solve_ucm(g);
        CHECK(fit.residual() <= 1e-8);
        for (std::uint32_t i = 0; i < g.node_count(); ++i) {
            CHECK(std::abs(fit.expected_degree(i) - static_cast<double>(g.degree(i))) <= 1e-6);
            for (std::uint32_t j = i + 1; j < g.node_count(); ++j)
                if (g.degree(i) == g.degree(j))
                    CHECK(std::abs(fit.multiplier(i) - fit.multiplier(j)) <= 1e-10);
        }
    }
}

TEST_CASE("ucm: likelihood trace is non-decreasing") {
    SolveOptions opts;
    opts.track_likelihood = true;
    auto g = oracle::random_undirected(50, 0.12, 8);
    auto fit = solve_ucm(g, opts);
    const auto& trace = fit.likelihood_trace();
    REQUIRE(trace.size() >= 2);
    for (std::size_t s = 1; s < trace.size(); ++s) CHECK(trace[s] >= trace[s - 1] - 1e-12);
}

TEST_CASE("ucm: json round trip") {
    auto g = oracle::random_undirected(25, 0.2, 77);
    auto fit = solve_ucm(g);
    auto fit2 = UcmFit::from_json(fit.to_json());
    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        for (std::uint32_t j = 0; j < g.node_count(); ++j)
            if (i != j) CHECK(fit.probability(i, j) == fit2.probability(i, j));
}

TEST_CASE("chung-lu: two disjoint edges give 1/4 for every pair") {
    auto g = make_graph({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = 0; j < 4; ++j)
            if (i != j) CHECK(chung_lu_probability(g, i, j).value == doctest::Approx(0.25));
}

TEST_CASE("chung-lu: zero degree gives zero probability") {
    auto g = make_graph({"a", "b", "c"}, {{0, 1}});
    CHECK(chung_lu_probability(g, 2, 0).value == 0.0);
}

TEST_CASE("chung-lu: star center-leaf value and clamping") {
    auto star = make_graph({"c", "l1", "l2", "l3"}, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(chung_lu_probability(star, 0, 1).value == doctest::Approx(0.5));
    CHECK_FALSE(chung_lu_probability(star, 0, 1).clamped);
    // A strong hub exceeds 1: k_i k_j / 2m must clamp and flag.
    auto hub = make_graph({"h", "x", "y", "z", "w"},
                          {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    CHECK(chung_lu_probability(hub, 0, 1).value == 1.0);
    CHECK(chung_lu_probability(hub, 0, 1).clamped);
}

TEST_CASE("sampling: degenerate fits give empty and complete graphs") {
    auto empty_fit = solve_bicm(make_bipartite(3, 4, {}));
    for (const auto& s : sample_ensemble(empty_fit, 5, 123)) CHECK(s.edge_count() == 0);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t a = 0; a < 4; ++a) all.emplace_back(i, a);
    auto full_fit = solve_bicm(make_bipartite(3, 4, all));
    for (const auto& s : sample_ensemble(full_fit, 5, 123)) CHECK(s.edge_count() == 12);
}

TEST_CASE("sampling: mean edge count of the symmetric 2x2 fit") {
    auto fit = solve_bicm(make_bipartite(2, 2, {{0, 0}, {1, 1}}));
    auto samples = sample_ensemble(fit, 10000, 2024);
    double total = 0.0;
    for (const auto& s : samples) total += static_cast<double>(s.edge_count());
    CHECK(total / 10000.0 == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("sampling: fixed seed reproduces bit-identical samples") {
    auto fit = solve_bicm(oracle::random_bipartite(10, 12, 0.3, 5));
    auto s1 = sample_ensemble(fit, 3, 55);
    auto s2 = sample_ensemble(fit, 3, 55);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t k = 0; k < s1.size(); ++k) {
        REQUIRE(s1[k].edge_count() == s2[k].edge_count());
        for (std::uint32_t i = 0; i < s1[k].top_count(); ++i)
            CHECK(s1[k].top_adjacency(i) == s2[k].top_adjacency(i));
    }
}

TEST_CASE("sampling: empirical mean degrees stay within four standard errors") {
    auto g = oracle::random_bipartite(12, 18, 0.3, 17);
    auto fit = solve_bicm(g);
    const std::uint32_t n_samples = 10000;
    auto samples = sample_ensemble(fit, n_samples, 909);
    for (std::uint32_t i = 0; i < g.top_count(); ++i) {
        double mean = 0.0;
        for (const auto& s : samples) mean += static_cast<double>(s.top_degree(i));
        mean /= n_samples;
        double variance = 0.0;
        for (std::uint32_t a = 0; a < g.bottom_count(); ++a) {
            const double p = fit.probability(i, a);
            variance += p * (1.0 - p);
        }
        const double se = std::sqrt(variance / n_samples);
        CHECK(std::abs(mean - static_cast<double>(g.top_degree(i))) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("log_likelihood: empty graph under the all-zero fit is 0") {
    auto g = make_bipartite(3, 4, {});
    auto fit = solve_bicm(g);
    CHECK(log_likelihood(fit, g) == 0.0);
}

TEST_CASE("log_likelihood: single pair at p = 0.5 with the edge present") {
    auto g = make_bipartite(2, 2, {{0, 0}, {1, 1}});
    auto fit = solve_bicm(g);
    auto one_edge = make_bipartite(2, 2, {{0, 0}});
    // Every pair contributes ln(0.5) regardless of occupancy at p = 0.5; the
    // single-pair value is the per-term ln(0.5).
    CHECK(log_likelihood(fit, one_edge) == doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-6));
}

TEST_CASE("log_likelihood: 2x2 all-half fit scores any graph at 4 ln 0.5") {
    auto fit = solve_bicm(make_bipartite(2, 2, {{0, 0}, {1, 1}}));
    for (auto edges : std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>{
             {}, {{0, 0}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}) {
        auto g = make_bipartite(2, 2, edges);
        CHECK(log_likelihood(fit, g) == doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-6));
    }
}

TEST_CASE("log_likelihood: impossible graph under a pinned fit is -infinity") {
    auto fit = solve_bicm(make_bipartite(3, 4, {}));  // all p = 0
    auto g = make_bipartite(3, 4, {{0, 0}});
    CHECK(log_likelihood(fit, g) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("log_likelihood: solver trace final value matches module computation") {
    SolveOptions opts;
    opts.track_likelihood = true;
    auto g = oracle::random_bipartite(20, 25, 0.2, 63);
    auto fit = solve_bicm(g, opts);
    CHECK(fit.likelihood_trace().back() == doctest::Approx(log_likelihood(fit, g)).epsilon(1e-9));
}

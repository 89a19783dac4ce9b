#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/projection/project.hpp"

using namespace semnet;

namespace {

BipartiteGraph make_bipartite(std::size_t nt, std::size_t nb,
                              std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::vector<std::string> top(nt), bottom(nb);
    for (std::size_t i = 0; i < nt; ++i) top[i] = "t" + std::to_string(i);
    for (std::size_t a = 0; a < nb; ++a) bottom[a] = "b" + std::to_string(a);
    return BipartiteGraph::from_edges(std::move(top), std::move(bottom), edges);
}

}  // namespace

TEST_CASE("vmotifs: disjoint neighborhoods store no pair") {
    auto g = make_bipartite(2, 4, {{0, 0}, {0, 1}, {1, 2}, {1, 3}});
    auto counts = count_vmotifs(g, BipartiteGraph::Layer::Top);
    CHECK(counts.counts.empty());
    CHECK(counts.get(0, 1) == 0);
}

TEST_CASE("vmotifs: complete 2x3 top pair shares all bottom nodes") {
    auto g = make_bipartite(2, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}});
    auto counts = count_vmotifs(g, BipartiteGraph::Layer::Top);
    CHECK(counts.get(0, 1) == 3);
}

TEST_CASE("vmotifs: single shared neighbor") {
    auto g = make_bipartite(2, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
    auto counts = count_vmotifs(g, BipartiteGraph::Layer::Top);
    CHECK(counts.get(0, 1) == 1);
    // bottom-layer projection of the same graph
    auto bcounts = count_vmotifs(g, BipartiteGraph::Layer::Bottom);
    CHECK(bcounts.get(0, 1) == 1);  // b0,b1 share t0
    CHECK(bcounts.get(1, 2) == 1);  // b1,b2 share t1
    CHECK(bcounts.get(0, 2) == 0);
}

TEST_CASE("vmotifs: counts match the definition sum_a m_ia m_ja on random graphs") {
    auto g = oracle::random_bipartite(15, 25, 0.25, 3);
    auto counts = count_vmotifs(g, BipartiteGraph::Layer::Top);
    for (std::uint32_t i = 0; i < g.top_count(); ++i) {
        for (std::uint32_t j = i + 1; j < g.top_count(); ++j) {
            std::uint32_t expected = 0;
            for (std::uint32_t a = 0; a < g.bottom_count(); ++a)
                if (g.has_edge(i, a) && g.has_edge(j, a)) ++expected;
            CHECK(counts.get(i, j) == expected);
            CHECK(counts.get(j, i) == expected);
            CHECK(expected <= std::min(g.top_degree(i), g.top_degree(j)));
        }
    }
}

TEST_CASE("poisson-binomial: frozen examples") {
    std::vector<double> half{0.5, 0.5};
    CHECK(poisson_binomial_survival(half, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(poisson_binomial_survival(half, 0) == 1.0);
    std::vector<double> small{0.1, 0.2};
    // PMF: P(0)=0.72, P(1)=0.26, P(2)=0.02 -> P(V>=1)=0.28
    CHECK(poisson_binomial_survival(small, 1) == doctest::Approx(0.28).epsilon(1e-12));
    auto pmf = poisson_binomial_pmf(small);
    CHECK(pmf[0] == doctest::Approx(0.72).epsilon(1e-12));
    CHECK(pmf[1] == doctest::Approx(0.26).epsilon(1e-12));
    CHECK(pmf[2] == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("poisson-binomial: DP PMF matches brute-force enumeration up to N = 15") {
    Rng rng(11);
    for (std::size_t n : {1u, 2u, 5u, 9u, 12u, 15u}) {
        std::vector<double> p(n);
        for (auto& v : p) v = rng.next_double();
        const auto dp = poisson_binomial_pmf(p);
        const auto brute = oracle::pb_pmf_enumerated(p);
        REQUIRE(dp.size() == brute.size());
        for (std::size_t k = 0; k <= n; ++k) CHECK(dp[k] == doctest::Approx(brute[k]).epsilon(1e-12));
    }
}

TEST_CASE("poisson-binomial: equal probabilities reduce to the closed-form binomial") {
    for (double p : {0.05, 0.3, 0.5, 0.97}) {
        const std::size_t n = 40;
        std::vector<double> probs(n, p);
        const auto dp = poisson_binomial_pmf(probs);
        const auto closed = oracle::binomial_pmf(n, p);
        for (std::size_t k = 0; k <= n; ++k) {
            CHECK(std::abs(dp[k] - closed[k]) <= 1e-12);
        }
    }
}

TEST_CASE("poisson-binomial: PMF sums to one up to length 10000") {
    Rng rng(23);
    for (std::size_t n : {100u, 1000u, 10000u}) {
        std::vector<double> p(n);
        for (auto& v : p) v = rng.next_double();
        const auto pmf = poisson_binomial_pmf(p);
        double total = 0.0;
        for (double v : pmf) total += v;
        CHECK(std::abs(total - 1.0) <= 1e-10);
    }
}

TEST_CASE("poisson-binomial: survival is monotone non-increasing in n") {
    Rng rng(31);
    std::vector<double> p(200);
    for (auto& v : p) v = rng.next_double();
    double prev = 1.0;
    for (std::uint64_t n = 0; n <= 200; ++n) {
        const double s = poisson_binomial_survival(p, n);
        CHECK(s <= prev);
        prev = s;
    }
    // long-list route (truncated prefixes) with slack at the route switch
    std::vector<double> big(3000);
    for (auto& v : big) v = rng.next_double() * 0.2;
    prev = 1.0;
    for (std::uint64_t n = 0; n <= 3000; n += 37) {
        const double s = poisson_binomial_survival(big, n);
        CHECK(s <= prev + 1e-12);
        prev = s;
    }
}

TEST_CASE("poisson-binomial: long-list routes agree with the full PMF") {
    // 1500 trials forces the truncated-prefix paths; compare against an
    // explicitly computed full PMF tail.
    Rng rng(47);
    std::vector<double> p(1500);
    for (auto& v : p) v = rng.next_double() * 0.05;
    const auto pmf = poisson_binomial_pmf(p);
    for (std::uint64_t n : {1u, 5u, 40u, 90u, 1400u}) {
        double tail = 0.0;
        for (std::size_t t = pmf.size(); t-- > n;) tail += pmf[t];
        tail = std::min(tail, 1.0);
        CHECK(poisson_binomial_survival(p, n) == doctest::Approx(tail).epsilon(1e-9));
    }
}

TEST_CASE("poisson-binomial: certain and impossible tails") {
    std::vector<double> ones(10, 1.0);
    CHECK(poisson_binomial_survival(ones, 10) == 1.0);
    CHECK(poisson_binomial_survival(ones, 11) == 0.0);
    std::vector<double> zeros(10, 0.0);
    CHECK(poisson_binomial_survival(zeros, 1) == 0.0);
    CHECK(poisson_binomial_survival(zeros, 0) == 1.0);
}

TEST_CASE("poisson-binomial: deep tails underflow to zero with the flag set") {
    std::vector<double> p(2000, 1e-6);
    const auto s = poisson_binomial_survival_ex(p, 1800);
    CHECK(s.value == 0.0);
    CHECK(s.underflow);
}

TEST_CASE("fdr: worked example validating all five") {
    std::vector<double> p{0.01, 0.02, 0.03, 0.04, 0.05};
    auto sel = fdr_select(p, 0.05);
    CHECK(sel.selected.size() == 5);
    CHECK(sel.cutoff_rank == 5);
}

TEST_CASE("fdr: worked example validating three of four") {
    std::vector<double> p{0.004, 0.03, 0.03, 0.8};
    auto sel = fdr_select(p, 0.05);
    CHECK(sel.selected == std::vector<std::size_t>{0, 1, 2});
    CHECK(sel.cutoff_rank == 3);
    CHECK(sel.cutoff_pvalue == doctest::Approx(0.03));
}

TEST_CASE("fdr: all-ones p-values validate nothing") {
    std::vector<double> p(6, 1.0);
    auto sel = fdr_select(p, 0.05);
    CHECK(sel.selected.empty());
    CHECK(sel.cutoff_rank == 0);
}

TEST_CASE("fdr: matches the independent step-up oracle on random vectors") {
    Rng rng(99);
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t n = 1 + rng.next_below(40);
        std::vector<double> p(n);
        for (auto& v : p) {
            v = rng.next_double();
            if (rng.bernoulli(0.3)) v *= 0.01;  // sprinkle small p-values
            if (rng.bernoulli(0.1)) v = 0.03;   // force ties
        }
        const double alpha = 0.01 + 0.4 * rng.next_double();
        const std::size_t m = n + rng.next_below(20);
        auto sel = fdr_select(p, alpha, m);
        auto expect = oracle::bh_stepup(p, alpha, m);
        CHECK(sel.selected == expect);
    }
}

TEST_CASE("fdr: rejects invalid alpha") {
    std::vector<double> p{0.5};
    CHECK_THROWS_AS(fdr_select(p, 0.0), ConfigError);
    CHECK_THROWS_AS(fdr_select(p, 1.0), ConfigError);
}

TEST_CASE("pair_pvalue: frozen examples") {
    // symmetric 2x2 fit: all p = 0.5, per-trial success 0.25
    auto g = make_bipartite(2, 2, {{0, 0}, {1, 1}});
    auto fit = solve_bicm(g);
    CHECK(pair_pvalue(fit, 0, 1, 0) == 1.0);
    CHECK(pair_pvalue(fit, 0, 1, 2) == doctest::Approx(0.0625).epsilon(1e-6));
    // saturated fit: observed the maximum with certainty
    auto full = make_bipartite(2, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}});
    auto sat = solve_bicm(full);
    CHECK(pair_pvalue(sat, 0, 1, 3) == 1.0);
    CHECK_THROWS_AS(pair_pvalue(sat, 0, 1, 4), DataError);
    CHECK_THROWS_AS(pair_pvalue(sat, 0, 0, 1), DataError);
}

TEST_CASE("pair_pvalue: symmetric in the pair") {
    auto g = oracle::random_bipartite(10, 30, 0.3, 5);
    auto fit = solve_bicm(g);
    auto counts = count_vmotifs(g, BipartiteGraph::Layer::Top);
    for (std::uint32_t i = 0; i < 10; ++i)
        for (std::uint32_t j = i + 1; j < 10; ++j) {
            const std::uint64_t v = counts.get(i, j);
            CHECK(pair_pvalue(fit, i, j, v) == pair_pvalue(fit, j, i, v));
        }
}

TEST_CASE("project_validated: empty graph yields an empty projection") {
    auto g = make_bipartite(4, 5, {});
    auto proj = project_validated(g, BipartiteGraph::Layer::Top, 0.05);
    CHECK(proj.tests.empty());
    CHECK(proj.graph.node_count() == 4);
    CHECK(proj.graph.edge_count() == 0);
}

TEST_CASE("project_validated: planted pair with overwhelming co-occurrence validates") {
    // Two top nodes sharing all 50 of their bottom neighbors inside a large
    // sparse background; the pair's p-value is far below any cutoff.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    const std::uint32_t planted_bottoms = 50;
    const std::uint32_t n_bottom = 10000;
    for (std::uint32_t a = 0; a < planted_bottoms; ++a) {
        edges.push_back({0, a});
        edges.push_back({1, a});
    }
    // background: 60 tops, each linked to 150 scattered bottoms so bottom
    // degrees stay low but mostly nonzero
    Rng rng(2025);
    for (std::uint32_t i = 2; i < 62; ++i)
        for (int e = 0; e < 150; ++e)
            edges.push_back({i, static_cast<std::uint32_t>(rng.next_below(n_bottom))});
    auto g = make_bipartite(62, n_bottom, edges);
    auto proj = project_validated(g, BipartiteGraph::Layer::Top, 0.01);
    bool planted_found = false;
    for (const auto& t : proj.tests) {
        if (t.a == 0 && t.b == 1) {
            planted_found = true;
            CHECK(t.validated);
            CHECK(t.p_value < 1e-10);
        }
    }
    CHECK(planted_found);
    CHECK(proj.graph.has_edge(0, 1));
}

TEST_CASE("project_validated: every validated edge is below the realized cutoff") {
    auto g = oracle::random_bipartite(30, 60, 0.25, 8);
    auto proj = project_validated(g, BipartiteGraph::Layer::Top, 0.2);
    for (const auto& t : proj.tests) {
        if (t.validated) CHECK(t.p_value <= proj.cutoff_pvalue);
        if (!t.validated && proj.cutoff_rank > 0) CHECK(t.p_value > proj.cutoff_pvalue);
    }
    // edge set equals exactly the validated pairs
    std::size_t validated = 0;
    for (const auto& t : proj.tests)
        if (t.validated) {
            ++validated;
            CHECK(proj.graph.has_edge(t.a, t.b));
        }
    CHECK(proj.graph.edge_count() == validated);
}

TEST_CASE("project_validated: observed universe shrinks the hypothesis count") {
    auto g = oracle::random_bipartite(20, 40, 0.3, 12);
    ProjectionOptions opts;
    opts.universe = FdrUniverse::Observed;
    auto proj_obs = project_validated(g, BipartiteGraph::Layer::Top, 0.05, nullptr, opts);
    auto proj_all = project_validated(g, BipartiteGraph::Layer::Top, 0.05);
    CHECK(proj_obs.hypotheses == proj_obs.tests.size());
    CHECK(proj_all.hypotheses == 20 * 19 / 2);
    CHECK(proj_obs.validated_count >= proj_all.validated_count);
}

TEST_CASE("project_validated: parallel evaluation is deterministic") {
    auto g = oracle::random_bipartite(25, 50, 0.25, 77);
    ProjectionOptions one;
    one.threads = 1;
    ProjectionOptions four;
    four.threads = 4;
    auto pa = project_validated(g, BipartiteGraph::Layer::Top, 0.1, nullptr, one);
    auto pb = project_validated(g, BipartiteGraph::Layer::Top, 0.1, nullptr, four);
    REQUIRE(pa.tests.size() == pb.tests.size());
    for (std::size_t k = 0; k < pa.tests.size(); ++k) {
        CHECK(pa.tests[k].p_value == pb.tests[k].p_value);
        CHECK(pa.tests[k].validated == pb.tests[k].validated);
    }
}

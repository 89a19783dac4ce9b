#include "semnet/maxent/ucm.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "class_system.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/kernels/kernels.hpp"

namespace semnet {

using detail::logistic_frac;

namespace {

struct PeelResult {
    std::vector<std::uint64_t> res;
    std::vector<bool> active;
    std::vector<NodeForce> force;
};

PeelResult peel_degenerate(std::vector<std::uint64_t> res) {
    PeelResult r;
    r.res = std::move(res);
    r.active.assign(r.res.size(), true);
    r.force.resize(r.res.size());
    std::size_t n_act = r.res.size();
    std::uint32_t step = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < r.res.size(); ++i) {
            if (!r.active[i]) continue;
            if (r.res[i] == 0) {
                r.force[i] = {ForcedState::Zero, ++step};
            } else if (r.res[i] == n_act - 1) {
                r.force[i] = {ForcedState::Saturated, ++step};
                for (std::size_t j = 0; j < r.res.size(); ++j)
                    if (r.active[j] && j != i) --r.res[j];
            } else {
                continue;
            }
            r.active[i] = false;
            --n_act;
            changed = true;
        }
    }
    return r;
}

double class_log_likelihood(const detail::ClassIndex& cls, const std::vector<double>& x) {
    double ll = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a)
        ll += cls.count[a] * cls.degree[a] * std::log(x[a]);
    for (std::size_t a = 0; a < x.size(); ++a) {
        for (std::size_t b = a; b < x.size(); ++b) {
            const double pairs =
                (a == b) ? cls.count[a] * (cls.count[a] - 1.0) * 0.5 : cls.count[a] * cls.count[b];
            ll -= pairs * std::log1p(x[a] * x[b]);
        }
    }
    return ll;
}

}  // namespace

UcmFit solve_ucm(const UndirectedGraph& g, const SolveOptions& opts) {
    if (g.node_count() == 0) throw DataError("solve_ucm: empty graph");
    if (opts.tolerance <= 0.0) throw ConfigError("solve_ucm: tolerance must be positive");
    if (opts.max_iterations == 0) throw ConfigError("solve_ucm: max_iterations must be positive");

    UcmFit fit;
    fit.degree_.resize(g.node_count());
    for (std::uint32_t i = 0; i < g.node_count(); ++i) fit.degree_[i] = g.degree(i);
    fit.tolerance_ = opts.tolerance;

    PeelResult peel = peel_degenerate(fit.degree_);
    fit.force_ = std::move(peel.force);
    const detail::ClassIndex cls = detail::build_classes(peel.res, peel.active);
    fit.class_of_ = cls.node_class;
    fit.x_.assign(g.node_count(), std::numeric_limits<double>::quiet_NaN());

    const std::size_t d = cls.degree.size();
    if (d == 0) return fit;

    double active_degree_sum = 0.0;
    for (std::size_t a = 0; a < d; ++a) active_degree_sum += cls.count[a] * cls.degree[a];
    const double scale = 1.0 / std::sqrt(active_degree_sum);
    std::vector<double> x(d);
    for (std::size_t a = 0; a < d; ++a) x[a] = cls.degree[a] * scale;

    const auto& ops = kernels::active_ops();
    // Expected degree of one member of class a: the class sum minus the
    // node's own diagonal term.
    auto expected = [&](std::size_t a, double xa) {
        return ops.logistic_weighted_sum(xa, x.data(), cls.count.data(), d) -
               logistic_frac(xa * xa);
    };
    auto residual_now = [&] {
        double r = 0.0;
        for (std::size_t a = 0; a < d; ++a)
            r = std::max(r, std::abs(expected(a, x[a]) - cls.degree[a]));
        return r;
    };

    bool bisect_mode = false;
    std::vector<double> residual_history;
    double residual = residual_now();
    std::uint32_t sweep = 0;
    if (opts.track_likelihood) fit.likelihood_trace_.push_back(class_log_likelihood(cls, x));
    while (residual > opts.tolerance && sweep < opts.max_iterations) {
        ++sweep;
        for (std::size_t a = 0; a < d; ++a) {
            const double xa = x[a];
            const double ek = expected(a, xa);
            if (bisect_mode) {
                x[a] = detail::solve_increasing([&](double v) { return expected(a, v); },
                                                cls.degree[a], xa);
                continue;
            }
            const double cand = xa * cls.degree[a] / ek;
            const double stepped = xa + opts.damping * (cand - xa);
            // The diagonal term makes the fixed-point map non-monotone in
            // rare cases; accept the damped step only while it stays on the
            // same side of the class constraint and improves it, otherwise
            // solve the one-dimensional problem exactly.
            const double e_before = ek - cls.degree[a];
            const double e_after = expected(a, stepped) - cls.degree[a];
            if ((e_before < 0.0) == (e_after < 0.0) && std::abs(e_after) <= std::abs(e_before)) {
                x[a] = stepped;
            } else {
                x[a] = detail::solve_increasing([&](double v) { return expected(a, v); },
                                                cls.degree[a], xa);
            }
        }
        residual = residual_now();
        residual_history.push_back(residual);
        if (opts.track_likelihood) fit.likelihood_trace_.push_back(class_log_likelihood(cls, x));
        if (!bisect_mode && residual_history.size() >= 32) {
            const double before = residual_history[residual_history.size() - 16];
            if (residual > 0.95 * before) bisect_mode = true;
        }
    }
    fit.iterations_ = sweep;
    fit.residual_ = residual;
    if (residual > opts.tolerance)
        throw ConvergenceError("solve_ucm: no convergence after " + std::to_string(sweep) +
                                   " sweeps (residual " + std::to_string(residual) + ")",
                               residual);

    for (std::uint32_t i = 0; i < g.node_count(); ++i)
        if (cls.node_class[i] != UINT32_MAX) fit.x_[i] = x[cls.node_class[i]];
    return fit;
}

double UcmFit::probability(std::uint32_t i, std::uint32_t j) const {
    const NodeForce& fi = force_[i];
    const NodeForce& fj = force_[j];
    if (fi.state != ForcedState::Free || fj.state != ForcedState::Free) {
        if (fi.state != ForcedState::Free && (fj.state == ForcedState::Free || fi.step < fj.step))
            return fi.state == ForcedState::Saturated ? 1.0 : 0.0;
        return fj.state == ForcedState::Saturated ? 1.0 : 0.0;
    }
    return logistic_frac(x_[i] * x_[j]);
}

double UcmFit::self_pair_value(std::uint32_t i) const {
    switch (force_[i].state) {
        case ForcedState::Zero: return 0.0;
        case ForcedState::Saturated: return 1.0;
        default: return logistic_frac(x_[i] * x_[i]);
    }
}

double UcmFit::expected_degree(std::uint32_t i) const {
    double s = 0.0;
    for (std::uint32_t j = 0; j < node_count(); ++j)
        if (j != i) s += probability(i, j);
    return s;
}

double UcmFit::multiplier(std::uint32_t i) const {
    switch (force_[i].state) {
        case ForcedState::Zero: return 0.0;
        case ForcedState::Saturated: return std::numeric_limits<double>::infinity();
        default: return x_[i];
    }
}

nlohmann::ordered_json UcmFit::to_json() const {
    std::map<std::uint64_t, double> by_degree;
    for (std::size_t i = 0; i < degree_.size(); ++i)
        if (force_[i].state == ForcedState::Free) by_degree.emplace(degree_[i], x_[i]);
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const auto& [deg, x] : by_degree)
        classes.push_back({{"degree", deg}, {"multiplier", x}});

    nlohmann::ordered_json j;
    j["model"] = "ucm";
    j["node_count"] = degree_.size();
    j["degrees"] = degree_;
    j["class_multipliers"] = classes;
    j["residual"] = residual_;
    j["tolerance"] = tolerance_;
    j["iterations"] = iterations_;
    return j;
}

UcmFit UcmFit::from_json(const nlohmann::json& j) {
    if (j.value("model", "") != std::string("ucm")) throw DataError("fit json: expected model=ucm");
    UcmFit fit;
    fit.degree_ = j.at("degrees").get<std::vector<std::uint64_t>>();
    if (fit.degree_.size() != j.at("node_count").get<std::size_t>())
        throw DataError("fit json: degree sequence length mismatch");
    fit.residual_ = j.at("residual").get<double>();
    fit.tolerance_ = j.at("tolerance").get<double>();
    fit.iterations_ = j.at("iterations").get<std::uint32_t>();

    PeelResult peel = peel_degenerate(fit.degree_);
    fit.force_ = std::move(peel.force);
    const detail::ClassIndex cls = detail::build_classes(peel.res, peel.active);
    fit.class_of_ = cls.node_class;

    std::map<std::uint64_t, double> by_degree;
    for (const auto& entry : j.at("class_multipliers"))
        by_degree[entry.at("degree").get<std::uint64_t>()] = entry.at("multiplier").get<double>();
    fit.x_.assign(fit.degree_.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < fit.degree_.size(); ++i) {
        if (fit.force_[i].state != ForcedState::Free) continue;
        auto it = by_degree.find(fit.degree_[i]);
        if (it == by_degree.end()) throw DataError("fit json: missing multiplier for a degree class");
        fit.x_[i] = it->second;
    }
    return fit;
}

ChungLuProbability chung_lu_probability(const UndirectedGraph& g, std::uint32_t i, std::uint32_t j) {
    const double two_m = 2.0 * g.total_weight();
    if (two_m <= 0.0) throw DataError("chung_lu_probability: graph has no edges");
    const double raw = g.strength(i) * g.strength(j) / two_m;
    if (raw > 1.0) return {1.0, true};
    return {raw, false};
}

}  // namespace semnet

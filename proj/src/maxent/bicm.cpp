#include "semnet/maxent/bicm.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "class_system.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/core/rng.hpp"
#include "semnet/kernels/kernels.hpp"

namespace semnet {

using detail::logistic_frac;

namespace {

struct PeelResult {
    std::vector<std::uint64_t> res_top, res_bottom;
    std::vector<bool> act_top, act_bottom;
    std::vector<NodeForce> top_force, bottom_force;
};

// Iteratively pins nodes whose residual degree is 0 (all probabilities 0) or
// equal to the count of active opposite nodes (all probabilities 1). Pinning
// a saturated node subtracts its certain edges from every active opposite
// degree, which can cascade.
PeelResult peel_degenerate(std::vector<std::uint64_t> res_top, std::vector<std::uint64_t> res_bottom) {
    PeelResult r;
    r.res_top = std::move(res_top);
    r.res_bottom = std::move(res_bottom);
    r.act_top.assign(r.res_top.size(), true);
    r.act_bottom.assign(r.res_bottom.size(), true);
    r.top_force.resize(r.res_top.size());
    r.bottom_force.resize(r.res_bottom.size());
    std::size_t n_act_top = r.res_top.size(), n_act_bottom = r.res_bottom.size();
    std::uint32_t step = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < r.res_top.size(); ++i) {
            if (!r.act_top[i]) continue;
            if (r.res_top[i] == 0) {
                r.top_force[i] = {ForcedState::Zero, ++step};
            } else if (r.res_top[i] == n_act_bottom) {
                r.top_force[i] = {ForcedState::Saturated, ++step};
                for (std::size_t a = 0; a < r.res_bottom.size(); ++a)
                    if (r.act_bottom[a]) --r.res_bottom[a];
            } else {
                continue;
            }
            r.act_top[i] = false;
            --n_act_top;
            changed = true;
        }
        for (std::size_t a = 0; a < r.res_bottom.size(); ++a) {
            if (!r.act_bottom[a]) continue;
            if (r.res_bottom[a] == 0) {
                r.bottom_force[a] = {ForcedState::Zero, ++step};
            } else if (r.res_bottom[a] == n_act_top) {
                r.bottom_force[a] = {ForcedState::Saturated, ++step};
                for (std::size_t i = 0; i < r.res_top.size(); ++i)
                    if (r.act_top[i]) --r.res_top[i];
            } else {
                continue;
            }
            r.act_bottom[a] = false;
            --n_act_bottom;
            changed = true;
        }
    }
    return r;
}

double class_log_likelihood(const detail::ClassIndex& top, const detail::ClassIndex& bottom,
                            const std::vector<double>& x, const std::vector<double>& y) {
    double ll = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a)
        ll += top.count[a] * top.degree[a] * std::log(x[a]);
    for (std::size_t b = 0; b < y.size(); ++b)
        ll += bottom.count[b] * bottom.degree[b] * std::log(y[b]);
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < y.size(); ++b)
            ll -= top.count[a] * bottom.count[b] * std::log1p(x[a] * y[b]);
    return ll;
}

}  // namespace

BicmFit solve_bicm(const BipartiteGraph& g, const SolveOptions& opts) {
    if (g.top_count() == 0 || g.bottom_count() == 0)
        throw DataError("solve_bicm: empty layer");
    if (opts.tolerance <= 0.0) throw ConfigError("solve_bicm: tolerance must be positive");
    if (opts.max_iterations == 0) throw ConfigError("solve_bicm: max_iterations must be positive");

    BicmFit fit;
    fit.top_degree_ = g.top_degrees();
    fit.bottom_degree_ = g.bottom_degrees();
    fit.tolerance_ = opts.tolerance;

    PeelResult peel = peel_degenerate(fit.top_degree_, fit.bottom_degree_);
    fit.top_force_ = std::move(peel.top_force);
    fit.bottom_force_ = std::move(peel.bottom_force);

    const detail::ClassIndex top = detail::build_classes(peel.res_top, peel.act_top);
    const detail::ClassIndex bottom = detail::build_classes(peel.res_bottom, peel.act_bottom);
    fit.top_class_of_ = top.node_class;
    fit.bottom_class_of_ = bottom.node_class;

    const std::size_t dt = top.degree.size(), db = bottom.degree.size();
    fit.top_x_.assign(g.top_count(), std::numeric_limits<double>::quiet_NaN());
    fit.bottom_y_.assign(g.bottom_count(), std::numeric_limits<double>::quiet_NaN());
    if (dt == 0 || db == 0) {
        // Everything pinned during peeling; constraints hold exactly.
        return fit;
    }

    double active_edges = 0.0;
    for (std::size_t a = 0; a < dt; ++a) active_edges += top.count[a] * top.degree[a];
    const double scale = 1.0 / std::sqrt(active_edges);
    std::vector<double> x(dt), y(db);
    for (std::size_t a = 0; a < dt; ++a) x[a] = top.degree[a] * scale;
    for (std::size_t b = 0; b < db; ++b) y[b] = bottom.degree[b] * scale;

    const auto& ops = kernels::active_ops();
    auto residual_now = [&] {
        double r = 0.0;
        for (std::size_t a = 0; a < dt; ++a)
            r = std::max(r, std::abs(ops.logistic_weighted_sum(x[a], y.data(), bottom.count.data(), db) -
                                     top.degree[a]));
        for (std::size_t b = 0; b < db; ++b)
            r = std::max(r, std::abs(ops.logistic_weighted_sum(y[b], x.data(), top.count.data(), dt) -
                                     bottom.degree[b]));
        return r;
    };

    bool bisect_mode = false;
    std::vector<double> residual_history;
    double residual = residual_now();
    std::uint32_t sweep = 0;
    if (opts.track_likelihood)
        fit.likelihood_trace_.push_back(class_log_likelihood(top, bottom, x, y));
    while (residual > opts.tolerance && sweep < opts.max_iterations) {
        ++sweep;
        for (std::size_t a = 0; a < dt; ++a) {
            if (bisect_mode) {
                x[a] = detail::solve_increasing(
                    [&](double v) { return ops.logistic_weighted_sum(v, y.data(), bottom.count.data(), db); },
                    top.degree[a], x[a]);
            } else {
                const double ek = ops.logistic_weighted_sum(x[a], y.data(), bottom.count.data(), db);
                const double cand = x[a] * top.degree[a] / ek;
                x[a] += opts.damping * (cand - x[a]);
            }
        }
        for (std::size_t b = 0; b < db; ++b) {
            if (bisect_mode) {
                y[b] = detail::solve_increasing(
                    [&](double v) { return ops.logistic_weighted_sum(v, x.data(), top.count.data(), dt); },
                    bottom.degree[b], y[b]);
            } else {
                const double eh = ops.logistic_weighted_sum(y[b], x.data(), top.count.data(), dt);
                const double cand = y[b] * bottom.degree[b] / eh;
                y[b] += opts.damping * (cand - y[b]);
            }
        }
        residual = residual_now();
        residual_history.push_back(residual);
        if (opts.track_likelihood)
            fit.likelihood_trace_.push_back(class_log_likelihood(top, bottom, x, y));
        // Stalled or oscillating damped iteration: fall back to per-class
        // bisection, which solves each one-dimensional constraint exactly.
        if (!bisect_mode && residual_history.size() >= 32) {
            const double before = residual_history[residual_history.size() - 16];
            if (residual > 0.95 * before) bisect_mode = true;
        }
    }
    fit.iterations_ = sweep;
    fit.residual_ = residual;
    if (residual > opts.tolerance)
        throw ConvergenceError("solve_bicm: no convergence after " + std::to_string(sweep) +
                                   " sweeps (residual " + std::to_string(residual) + ")",
                               residual);

    for (std::size_t i = 0; i < g.top_count(); ++i)
        if (top.node_class[i] != UINT32_MAX) fit.top_x_[i] = x[top.node_class[i]];
    for (std::size_t a = 0; a < g.bottom_count(); ++a)
        if (bottom.node_class[a] != UINT32_MAX) fit.bottom_y_[a] = y[bottom.node_class[a]];
    return fit;
}

double BicmFit::probability(std::uint32_t top, std::uint32_t bottom) const {
    const NodeForce& ft = top_force_[top];
    const NodeForce& fb = bottom_force_[bottom];
    if (ft.state != ForcedState::Free || fb.state != ForcedState::Free) {
        // Whichever endpoint was pinned first fixes the pair.
        if (ft.state != ForcedState::Free && (fb.state == ForcedState::Free || ft.step < fb.step))
            return ft.state == ForcedState::Saturated ? 1.0 : 0.0;
        return fb.state == ForcedState::Saturated ? 1.0 : 0.0;
    }
    return logistic_frac(top_x_[top] * bottom_y_[bottom]);
}

double BicmFit::expected_top_degree(std::uint32_t top) const {
    double s = 0.0;
    for (std::uint32_t a = 0; a < bottom_count(); ++a) s += probability(top, a);
    return s;
}

double BicmFit::expected_bottom_degree(std::uint32_t bottom) const {
    double s = 0.0;
    for (std::uint32_t i = 0; i < top_count(); ++i) s += probability(i, bottom);
    return s;
}

double BicmFit::top_multiplier(std::uint32_t top) const {
    switch (top_force_[top].state) {
        case ForcedState::Zero: return 0.0;
        case ForcedState::Saturated: return std::numeric_limits<double>::infinity();
        default: return top_x_[top];
    }
}

double BicmFit::bottom_multiplier(std::uint32_t bottom) const {
    switch (bottom_force_[bottom].state) {
        case ForcedState::Zero: return 0.0;
        case ForcedState::Saturated: return std::numeric_limits<double>::infinity();
        default: return bottom_y_[bottom];
    }
}

namespace {

nlohmann::ordered_json classes_to_json(const std::vector<std::uint64_t>& degrees,
                                       const std::vector<NodeForce>& force,
                                       const std::vector<double>& multiplier) {
    // Multipliers keyed by observed degree; the reduced system assigns equal
    // multipliers to equal degrees, and forced nodes are reconstructed from
    // the degree sequence alone.
    std::map<std::uint64_t, double> by_degree;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (force[i].state == ForcedState::Free) by_degree.emplace(degrees[i], multiplier[i]);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [deg, x] : by_degree)
        arr.push_back({{"degree", deg}, {"multiplier", x}});
    return arr;
}

}  // namespace

nlohmann::ordered_json BicmFit::to_json() const {
    nlohmann::ordered_json j;
    j["model"] = "bicm";
    j["top_count"] = top_count();
    j["bottom_count"] = bottom_count();
    j["top_degrees"] = top_degree_;
    j["bottom_degrees"] = bottom_degree_;
    j["top_class_multipliers"] = classes_to_json(top_degree_, top_force_, top_x_);
    j["bottom_class_multipliers"] = classes_to_json(bottom_degree_, bottom_force_, bottom_y_);
    j["residual"] = residual_;
    j["tolerance"] = tolerance_;
    j["iterations"] = iterations_;
    return j;
}

BicmFit BicmFit::from_json(const nlohmann::json& j) {
    if (j.value("model", "") != std::string("bicm")) throw DataError("fit json: expected model=bicm");
    BicmFit fit;
    fit.top_degree_ = j.at("top_degrees").get<std::vector<std::uint64_t>>();
    fit.bottom_degree_ = j.at("bottom_degrees").get<std::vector<std::uint64_t>>();
    if (fit.top_degree_.size() != j.at("top_count").get<std::size_t>() ||
        fit.bottom_degree_.size() != j.at("bottom_count").get<std::size_t>())
        throw DataError("fit json: degree sequence length mismatch");
    fit.residual_ = j.at("residual").get<double>();
    fit.tolerance_ = j.at("tolerance").get<double>();
    fit.iterations_ = j.at("iterations").get<std::uint32_t>();

    PeelResult peel = peel_degenerate(fit.top_degree_, fit.bottom_degree_);
    fit.top_force_ = std::move(peel.top_force);
    fit.bottom_force_ = std::move(peel.bottom_force);
    const detail::ClassIndex top = detail::build_classes(peel.res_top, peel.act_top);
    const detail::ClassIndex bottom = detail::build_classes(peel.res_bottom, peel.act_bottom);
    fit.top_class_of_ = top.node_class;
    fit.bottom_class_of_ = bottom.node_class;

    auto load_layer = [](const nlohmann::json& arr, const detail::ClassIndex& classes,
                         const std::vector<std::uint64_t>& degrees,
                         const std::vector<NodeForce>& force, std::vector<double>& out) {
        // Multipliers are stored per observed degree; map them back through
        // each free node's residual-degree class.
        std::map<std::uint64_t, double> by_degree;
        for (const auto& entry : arr)
            by_degree[entry.at("degree").get<std::uint64_t>()] = entry.at("multiplier").get<double>();
        out.assign(degrees.size(), std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            if (force[i].state != ForcedState::Free) continue;
            auto it = by_degree.find(degrees[i]);
            if (it == by_degree.end()) throw DataError("fit json: missing multiplier for a degree class");
            out[i] = it->second;
        }
        (void)classes;
    };
    load_layer(j.at("top_class_multipliers"), top, fit.top_degree_, fit.top_force_, fit.top_x_);
    load_layer(j.at("bottom_class_multipliers"), bottom, fit.bottom_degree_, fit.bottom_force_,
               fit.bottom_y_);
    return fit;
}

double log_likelihood(const BicmFit& fit, const BipartiteGraph& g) {
    if (g.top_count() != fit.top_count() || g.bottom_count() != fit.bottom_count())
        throw DataError("log_likelihood: graph layer sizes do not match the fit");
    double ll = 0.0;
    for (std::uint32_t i = 0; i < g.top_count(); ++i) {
        const auto& adj = g.top_adjacency(i);
        std::size_t next_edge = 0;
        for (std::uint32_t a = 0; a < g.bottom_count(); ++a) {
            const bool edge = next_edge < adj.size() && adj[next_edge] == a;
            if (edge) ++next_edge;
            const double p = fit.probability(i, a);
            if (edge) {
                if (p == 0.0) return -std::numeric_limits<double>::infinity();
                if (p < 1.0) ll += std::log(p);
            } else {
                if (p == 1.0) return -std::numeric_limits<double>::infinity();
                if (p > 0.0) ll += std::log1p(-p);
            }
        }
    }
    return ll;
}

std::vector<BipartiteGraph> sample_ensemble(const BicmFit& fit, std::uint32_t count,
                                            std::uint64_t rng_seed) {
    std::vector<BipartiteGraph> samples;
    samples.reserve(count);
    std::vector<std::string> top_ids(fit.top_count()), bottom_ids(fit.bottom_count());
    for (std::size_t i = 0; i < top_ids.size(); ++i) top_ids[i] = "t" + std::to_string(i);
    for (std::size_t a = 0; a < bottom_ids.size(); ++a) bottom_ids[a] = "b" + std::to_string(a);
    for (std::uint32_t s = 0; s < count; ++s) {
        Rng rng(derive_seed(rng_seed, s));
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t i = 0; i < fit.top_count(); ++i) {
            for (std::uint32_t a = 0; a < fit.bottom_count(); ++a) {
                const double p = fit.probability(i, a);
                if (p >= 1.0) {
                    edges.emplace_back(i, a);
                } else if (p > 0.0 && rng.bernoulli(p)) {
                    edges.emplace_back(i, a);
                }
            }
        }
        samples.push_back(BipartiteGraph::from_edges(top_ids, bottom_ids, edges));
    }
    return samples;
}

}  // namespace semnet

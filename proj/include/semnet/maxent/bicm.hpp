#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "semnet/graph/bipartite.hpp"

namespace semnet {

// Node state after degenerate-degree peeling. Nodes whose degree pins their
// link probabilities (0 or the opposite layer size, possibly after earlier
// removals) are taken out before solving and reattached with forced
// probabilities; `step` orders the removals so mixed forced pairs resolve to
// whichever endpoint was pinned first.
enum class ForcedState : std::int8_t { Free = 0, Zero = -1, Saturated = 1 };

struct NodeForce {
    ForcedState state = ForcedState::Free;
    std::uint32_t step = 0;
};

struct SolveOptions {
    double tolerance = 1e-8;
    std::uint32_t max_iterations = 10000;
    double damping = 0.5;
    // Record the observed-graph log-likelihood after every sweep.
    bool track_likelihood = false;
};

// Fitted Bipartite Configuration Model. Link probabilities factorize as
// p_ia = x_i y_a / (1 + x_i y_a) with x_i = exp(-eta_i), y_a = exp(-theta_a);
// multipliers are solved on the reduced degree-class system, so equal-degree
// nodes carry identical multipliers exactly.
class BicmFit {
public:
    double probability(std::uint32_t top, std::uint32_t bottom) const;

    double expected_top_degree(std::uint32_t top) const;
    double expected_bottom_degree(std::uint32_t bottom) const;

    std::size_t top_count() const { return top_class_of_.size(); }
    std::size_t bottom_count() const { return bottom_class_of_.size(); }

    double residual() const { return residual_; }
    double tolerance() const { return tolerance_; }
    std::uint32_t iterations() const { return iterations_; }

    // Multiplier x_i for a free node; forced nodes return the limit value
    // (0 for pinned-zero, infinity for pinned-one).
    double top_multiplier(std::uint32_t top) const;
    double bottom_multiplier(std::uint32_t bottom) const;

    const std::vector<double>& likelihood_trace() const { return likelihood_trace_; }

    const std::vector<std::uint64_t>& top_degrees() const { return top_degree_; }
    const std::vector<std::uint64_t>& bottom_degrees() const { return bottom_degree_; }

    nlohmann::ordered_json to_json() const;
    static BicmFit from_json(const nlohmann::json& j);

    friend BicmFit solve_bicm(const BipartiteGraph& g, const SolveOptions& opts);

private:
    std::vector<std::uint64_t> top_degree_, bottom_degree_;
    std::vector<NodeForce> top_force_, bottom_force_;
    std::vector<double> top_x_, bottom_y_;  // per node; NaN for forced nodes
    std::vector<std::uint32_t> top_class_of_, bottom_class_of_;
    double residual_ = 0.0;
    double tolerance_ = 0.0;
    std::uint32_t iterations_ = 0;
    std::vector<double> likelihood_trace_;
};

BicmFit solve_bicm(const BipartiteGraph& g, const SolveOptions& opts = {});

// Log of the factorized graph probability under the fit, with 0*ln(0) := 0.
// A structurally impossible graph (an edge where p = 0, or a missing edge
// where p = 1) yields -infinity.
double log_likelihood(const BicmFit& fit, const BipartiteGraph& g);

// Bernoulli-samples `count` graphs from the fitted ensemble. Bit-reproducible
// for a fixed seed; sample s uses the derived stream seed (rng_seed, s).
// Sampled node identifiers are t0..tN / b0..bM.
std::vector<BipartiteGraph> sample_ensemble(const BicmFit& fit, std::uint32_t count,
                                            std::uint64_t rng_seed);

}  // namespace semnet

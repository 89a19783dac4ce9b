#pragma once

// Internal solver helpers shared by the bipartite and monopartite
// configuration-model fits. Not part of the public headers.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace semnet::detail {

// g(t) = t / (1 + t), the link-probability kernel.
inline double logistic_frac(double t) { return t / (1.0 + t); }

// Distinct-value classes over the residual degrees of active nodes.
struct ClassIndex {
    std::vector<double> degree;       // class constraint value
    std::vector<double> count;        // members per class (double: used in sums)
    std::vector<std::uint32_t> node_class;  // per node; UINT32_MAX when inactive
};

ClassIndex build_classes(const std::vector<std::uint64_t>& residual_degree,
                         const std::vector<bool>& active);

// Solves h(x) = target for increasing h on x > 0 by bracket expansion plus
// bisection. `x0` seeds the bracket.
double solve_increasing(const std::function<double(double)>& h, double target, double x0);

}  // namespace semnet::detail

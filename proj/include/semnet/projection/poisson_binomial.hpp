#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace semnet {

struct Survival {
    double value = 0.0;
    // True when the exact upper tail lies below the representable floor and
    // is reported as 0.
    bool underflow = false;
};

// Full Poisson-Binomial PMF over n+1 outcomes by dynamic-programming
// convolution of the per-trial Bernoulli factors. O(n^2).
std::vector<double> poisson_binomial_pmf(std::span<const double> probabilities);

// Upper tail P(V >= n) including the observed value; 1 when n == 0, 0 when n
// exceeds the trial count. For short trial lists the full PMF is summed from
// the top (exact tiny tails); for long lists the cheaper truncated prefix is
// used — over successes (survival by complement) or over failures (direct
// tail sum), whichever needs fewer PMF entries. Linear-space DP with
// power-of-two renormalization tracking keeps intermediate mass
// representable; tails that still underflow report 0 with the flag set.
Survival poisson_binomial_survival_ex(std::span<const double> probabilities, std::uint64_t n);

double poisson_binomial_survival(std::span<const double> probabilities, std::uint64_t n);

}  // namespace semnet

#include "semnet/projection/poisson_binomial.hpp"

#include <algorithm>
#include <cmath>

#include "semnet/kernels/kernels.hpp"

namespace semnet {

namespace {

constexpr std::size_t kFullPmfLimit = 1024;
constexpr double kRenormFloor = 1e-280;
constexpr int kRenormShift = 512;
constexpr double kUnderflowFloor = 1e-300;

double clamp_probability(double p) {
    if (!(p >= 0.0)) return 0.0;
    return p > 1.0 ? 1.0 : p;
}

// Truncated-prefix DP: returns sum_{t < len} P(T = t) where T counts
// successes over `trials`, with mass beyond the prefix dropped. The stored
// array is rescaled by 2^kRenormShift whenever it drifts below the
// representable floor; `exponent_deficit` counts the rescalings.
double prefix_mass(std::span<const double> trials, std::size_t len, int& exponent_deficit) {
    const auto& ops = kernels::active_ops();
    std::vector<double> pmf(len, 0.0);
    pmf[0] = 1.0;
    exponent_deficit = 0;
    std::size_t folded = 0;
    for (double raw : trials) {
        const double p = clamp_probability(raw);
        if (p != 0.0) ops.pb_fold(pmf.data(), len, p);
        if ((++folded & 63u) == 0) {
            double peak = 0.0;
            for (double v : pmf) peak = std::max(peak, v);
            if (peak != 0.0 && peak < kRenormFloor) {
                for (double& v : pmf) v = std::ldexp(v, kRenormShift);
                ++exponent_deficit;
            }
        }
    }
    return ops.sum(pmf.data(), len);
}

}  // namespace

std::vector<double> poisson_binomial_pmf(std::span<const double> probabilities) {
    const auto& ops = kernels::active_ops();
    std::vector<double> pmf(probabilities.size() + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t occupied = 1;
    for (double raw : probabilities) {
        ++occupied;
        const double p = clamp_probability(raw);
        if (p != 0.0) ops.pb_fold(pmf.data(), occupied, p);
    }
    return pmf;
}

Survival poisson_binomial_survival_ex(std::span<const double> probabilities, std::uint64_t n) {
    if (n == 0) return {1.0, false};
    const std::size_t trials = probabilities.size();
    if (n > trials) return {0.0, false};

    if (trials <= kFullPmfLimit) {
        const std::vector<double> pmf = poisson_binomial_pmf(probabilities);
        double tail = 0.0;
        for (std::size_t t = trials + 1; t-- > n;) tail += pmf[t];
        if (tail > 1.0) tail = 1.0;
        if (tail == 0.0) return {0.0, true};
        return {tail, false};
    }

    const std::size_t success_len = static_cast<std::size_t>(n);  // entries 0..n-1
    const std::size_t failure_len = trials - static_cast<std::size_t>(n) + 1;
    int deficit = 0;
    if (success_len <= failure_len) {
        const double mass = prefix_mass(probabilities, success_len, deficit);
        const double real_mass = deficit == 0 ? mass : std::ldexp(mass, -kRenormShift * deficit);
        const double tail = 1.0 - real_mass;
        if (tail <= 0.0) return {0.0, true};
        return {std::min(tail, 1.0), false};
    }
    // P(V >= n) = P(failures <= trials - n), computed as a direct prefix sum
    // over the complementary trial probabilities — no cancellation, so tiny
    // tails keep their leading digits.
    std::vector<double> complements(trials);
    for (std::size_t i = 0; i < trials; ++i)
        complements[i] = 1.0 - clamp_probability(probabilities[i]);
    const double mass = prefix_mass(complements, failure_len, deficit);
    const double real_mass = deficit == 0 ? mass : std::ldexp(mass, -kRenormShift * deficit);
    if (real_mass < kUnderflowFloor) return {0.0, true};
    return {std::min(real_mass, 1.0), false};
}

double poisson_binomial_survival(std::span<const double> probabilities, std::uint64_t n) {
    return poisson_binomial_survival_ex(probabilities, n).value;
}

}  // namespace semnet

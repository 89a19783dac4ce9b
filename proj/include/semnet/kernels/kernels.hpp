#pragma once

#include <cstddef>
#include <string_view>

namespace semnet::kernels {

// Data-parallel inner loops shared by the null-model solver and the
// Poisson-Binomial machinery. Scalar reference implementations define the
// semantics; the AVX2 variants are selected at runtime when the CPU supports
// them and are equivalence-tested against the reference.
//
// pb_fold and mul are elementwise (one mul/mul/add per lane) and must match
// the scalar reference bit for bit; the reductions (sum, dot,
// logistic_weighted_sum) reassociate and agree within floating-point
// tolerance only. Kernel translation units are built with -ffp-contract=off
// so the compiler cannot fuse the scalar reference differently.
struct Ops {
    // Folds one Bernoulli trial with success probability p into a truncated
    // PMF prefix: pmf[t] <- pmf[t]*(1-p) + pmf[t-1]*p for t = len-1..1,
    // then pmf[0] *= (1-p).
    void (*pb_fold)(double* pmf, std::size_t len, double p);

    // out[i] = a[i] * b[i]
    void (*mul)(const double* a, const double* b, double* out, std::size_t n);

    double (*sum)(const double* x, std::size_t n);

    double (*dot)(const double* a, const double* b, std::size_t n);

    // sum_i w[i] * (x*y[i]) / (1 + x*y[i]) — the expected-degree kernel of
    // the configuration-model fixed point.
    double (*logistic_weighted_sum)(double x, const double* y, const double* w, std::size_t n);

    const char* name;
};

const Ops& scalar_ops();

// Currently active backend (auto-detected on first use).
const Ops& active_ops();

// Forces a backend by name: "auto", "scalar", "avx2". Returns false when the
// requested backend is unavailable on this CPU.
bool set_backend(std::string_view name);

std::string_view active_backend_name();

// True when this build carries AVX2 kernels and the CPU supports them.
bool avx2_available();

}  // namespace semnet::kernels

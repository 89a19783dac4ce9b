#include "semnet/kernels/kernels.hpp"

namespace semnet::kernels {

namespace {

void pb_fold_scalar(double* pmf, std::size_t len, double p) {
    const double om = 1.0 - p;
    for (std::size_t t = len; t-- > 1;) pmf[t] = pmf[t] * om + pmf[t - 1] * p;
    pmf[0] *= om;
}

void mul_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double logistic_weighted_sum_scalar(double x, const double* y, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = x * y[i];
        acc += w[i] * (t / (1.0 + t));
    }
    return acc;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{pb_fold_scalar, mul_scalar, sum_scalar, dot_scalar,
                         logistic_weighted_sum_scalar, "scalar"};
    return ops;
}

}  // namespace semnet::kernels

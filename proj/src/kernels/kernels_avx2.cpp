// AVX2 variants of the numeric kernels. Built only on x86-64; selected at
// runtime via __builtin_cpu_supports so the binary still runs on older CPUs.
// Elementwise kernels (pb_fold, mul) use plain mul/add — no FMA — so each
// lane performs exactly the scalar reference arithmetic.

#include "semnet/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace semnet::kernels {

namespace {

__attribute__((target("avx2"))) void pb_fold_avx2(double* pmf, std::size_t len, double p) {
    const double om = 1.0 - p;
    const __m256d vp = _mm256_set1_pd(p);
    const __m256d vo = _mm256_set1_pd(om);
    std::size_t t = len;
    // Descending blocks of 4: writes cover [t-4, t), subsequent reads are
    // strictly below t-4, so in-place shifting is safe.
    while (t >= 5) {
        const __m256d cur = _mm256_loadu_pd(pmf + t - 4);
        const __m256d prev = _mm256_loadu_pd(pmf + t - 5);
        const __m256d r = _mm256_add_pd(_mm256_mul_pd(cur, vo), _mm256_mul_pd(prev, vp));
        _mm256_storeu_pd(pmf + t - 4, r);
        t -= 4;
    }
    while (t-- > 1) pmf[t] = pmf[t] * om + pmf[t - 1] * p;
    pmf[0] *= om;
}

__attribute__((target("avx2"))) void mul_avx2(const double* a, const double* b, double* out,
                                              std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

__attribute__((target("avx2"))) double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

__attribute__((target("avx2"))) double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double total = hsum(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

__attribute__((target("avx2"))) double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double total = hsum(acc);
    for (; i < n; ++i) total += a[i] * b[i];
    return total;
}

__attribute__((target("avx2"))) double logistic_weighted_sum_avx2(double x, const double* y,
                                                                  const double* w, std::size_t n) {
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(vx, _mm256_loadu_pd(y + i));
        const __m256d frac = _mm256_div_pd(t, _mm256_add_pd(one, t));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), frac));
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double t = x * y[i];
        total += w[i] * (t / (1.0 + t));
    }
    return total;
}

}  // namespace

const Ops* avx2_ops_or_null() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Ops ops{pb_fold_avx2, mul_avx2, sum_avx2, dot_avx2, logistic_weighted_sum_avx2,
                         "avx2"};
    return &ops;
}

}  // namespace semnet::kernels

#else

namespace semnet::kernels {
const Ops* avx2_ops_or_null() { return nullptr; }
}  // namespace semnet::kernels

#endif

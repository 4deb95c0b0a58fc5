#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "lvglasso/kernels.hpp"

namespace lvglasso::kernels::avx2 {

bool supported() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(signmask, v);
}

void soft_threshold(const double* z, std::size_t n, double tau, double* out) {
    const __m256d vtau = _mm256_set1_pd(tau);
    const __m256d vntau = _mm256_set1_pd(-tau);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(z + i);
        __m256d pos = _mm256_sub_pd(v, vtau);
        __m256d neg = _mm256_add_pd(v, vtau);
        __m256d gt = _mm256_cmp_pd(v, vtau, _CMP_GT_OQ);
        __m256d lt = _mm256_cmp_pd(v, vntau, _CMP_LT_OQ);
        __m256d r = _mm256_blendv_pd(zero, pos, gt);
        r = _mm256_blendv_pd(r, neg, lt);
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) {
        const double v = z[i];
        out[i] = v > tau ? v - tau : (v < -tau ? v + tau : 0.0);
    }
}

void combine2(double a, const double* x, double b, const double* y, std::size_t n, double* out) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                                  _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void combine3(double a, const double* x, double b, const double* y, double c, const double* z,
              std::size_t n, double* out) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                                                _mm256_mul_pd(vb, _mm256_loadu_pd(y + i))),
                                  _mm256_mul_pd(vc, _mm256_loadu_pd(z + i)));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

double sum_abs(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double max_abs(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double sum_sq(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

std::size_t count_nonzero(const double* x, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d eq = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_NEQ_UQ);
        c += static_cast<std::size_t>(_mm_popcnt_u32(
            static_cast<unsigned>(_mm256_movemask_pd(eq))));
    }
    for (; i < n; ++i) c += (x[i] != 0.0);
    return c;
}

std::size_t count_abs_above(const double* x, std::size_t n, double thresh) {
    const __m256d vt = _mm256_set1_pd(thresh);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d gt = _mm256_cmp_pd(abs_pd(_mm256_loadu_pd(x + i)), vt, _CMP_GT_OQ);
        c += static_cast<std::size_t>(_mm_popcnt_u32(
            static_cast<unsigned>(_mm256_movemask_pd(gt))));
    }
    for (; i < n; ++i) c += (std::fabs(x[i]) > thresh);
    return c;
}

}  // namespace

const Dispatch dispatch = {
    soft_threshold, combine2, combine3, sum_abs,         max_abs,
    sum_sq,         dot,      count_nonzero, count_abs_above, "avx2",
};

}  // namespace lvglasso::kernels::avx2

#endif  // x86_64

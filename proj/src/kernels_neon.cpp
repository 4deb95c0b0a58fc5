#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

#include "lvglasso/kernels.hpp"

namespace lvglasso::kernels::neon {

namespace {

void soft_threshold(const double* z, std::size_t n, double tau, double* out) {
    const float64x2_t vtau = vdupq_n_f64(tau);
    const float64x2_t vntau = vdupq_n_f64(-tau);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(z + i);
        float64x2_t pos = vsubq_f64(v, vtau);
        float64x2_t neg = vaddq_f64(v, vtau);
        uint64x2_t gt = vcgtq_f64(v, vtau);
        uint64x2_t lt = vcltq_f64(v, vntau);
        float64x2_t r = vbslq_f64(gt, pos, zero);
        r = vbslq_f64(lt, neg, r);
        vst1q_f64(out + i, r);
    }
    for (; i < n; ++i) {
        const double v = z[i];
        out[i] = v > tau ? v - tau : (v < -tau ? v + tau : 0.0);
    }
}

void combine2(double a, const double* x, double b, const double* y, std::size_t n, double* out) {
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vb = vdupq_n_f64(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t r = vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)),
                                  vmulq_f64(vb, vld1q_f64(y + i)));
        vst1q_f64(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void combine3(double a, const double* x, double b, const double* y, double c, const double* z,
              std::size_t n, double* out) {
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vb = vdupq_n_f64(b);
    const float64x2_t vc = vdupq_n_f64(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t r = vaddq_f64(vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)),
                                            vmulq_f64(vb, vld1q_f64(y + i))),
                                  vmulq_f64(vc, vld1q_f64(z + i)));
        vst1q_f64(out + i, r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

double sum_abs(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double max_abs(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double sum_sq(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        acc = vaddq_f64(acc, vmulq_f64(v, v));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

std::size_t count_nonzero(const double* x, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (x[i] != 0.0);
    return c;
}

std::size_t count_abs_above(const double* x, std::size_t n, double thresh) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (std::fabs(x[i]) > thresh);
    return c;
}

}  // namespace

const Dispatch dispatch = {
    soft_threshold, combine2, combine3, sum_abs,         max_abs,
    sum_sq,         dot,      count_nonzero, count_abs_above, "neon",
};

}  // namespace lvglasso::kernels::neon

#endif  // __aarch64__

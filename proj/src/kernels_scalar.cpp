#include "lvglasso/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace lvglasso::kernels {

namespace scalar {

void soft_threshold(const double* z, std::size_t n, double tau, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = z[i];
        if (v > tau) {
            out[i] = v - tau;
        } else if (v < -tau) {
            out[i] = v + tau;
        } else {
            out[i] = 0.0;  // literal zero, never a computed difference
        }
    }
}

void combine2(double a, const double* x, double b, const double* y, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void combine3(double a, const double* x, double b, const double* y, double c, const double* z,
              std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

double sum_abs(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double sum_sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
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

const Dispatch dispatch = {
    soft_threshold, combine2, combine3, sum_abs,         max_abs,
    sum_sq,         dot,      count_nonzero, count_abs_above, "scalar",
};

}  // namespace scalar

namespace {

const Dispatch* select() {
    const char* env = std::getenv("LVGLASSO_KERNELS");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar::dispatch;
#if defined(__x86_64__) || defined(_M_X64)
    if (env == nullptr || std::strcmp(env, "avx2") == 0) {
        if (avx2::supported()) return &avx2::dispatch;
    }
#endif
#if defined(__aarch64__)
    return &neon::dispatch;
#endif
    return &scalar::dispatch;
}

}  // namespace

const Dispatch& active() {
    static const Dispatch* chosen = select();
    return *chosen;
}

}  // namespace lvglasso::kernels

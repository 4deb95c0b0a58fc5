#pragma once

// Entrywise array kernels used by the prox operators and solver updates.
// Scalar reference implementations live in kernels::scalar; AVX2/NEON
// variants are selected once at startup via active().  Map kernels
// (soft_threshold, combine2/combine3) are bit-identical across lanes;
// reductions may differ in summation order.

#include <cstddef>
#include <cstdint>

namespace lvglasso::kernels {

struct Dispatch {
    // out[i] = z[i] - tau, z[i] + tau or exactly 0.0
    void (*soft_threshold)(const double* z, std::size_t n, double tau, double* out);
    // out[i] = a*x[i] + b*y[i]
    void (*combine2)(double a, const double* x, double b, const double* y, std::size_t n,
                     double* out);
    // out[i] = a*x[i] + b*y[i] + c*z[i]
    void (*combine3)(double a, const double* x, double b, const double* y, double c,
                     const double* z, std::size_t n, double* out);
    double (*sum_abs)(const double* x, std::size_t n);
    double (*max_abs)(const double* x, std::size_t n);
    double (*sum_sq)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    std::size_t (*count_nonzero)(const double* x, std::size_t n);
    std::size_t (*count_abs_above)(const double* x, std::size_t n, double thresh);
    const char* name;
};

namespace scalar {
void soft_threshold(const double* z, std::size_t n, double tau, double* out);
void combine2(double a, const double* x, double b, const double* y, std::size_t n, double* out);
void combine3(double a, const double* x, double b, const double* y, double c, const double* z,
              std::size_t n, double* out);
double sum_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
std::size_t count_nonzero(const double* x, std::size_t n);
std::size_t count_abs_above(const double* x, std::size_t n, double thresh);
extern const Dispatch dispatch;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const Dispatch dispatch;
bool supported();
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
extern const Dispatch dispatch;
}  // namespace neon
#endif

// The lane picked at startup.  LVGLASSO_KERNELS=scalar forces the
// reference implementation.
const Dispatch& active();

}  // namespace lvglasso::kernels

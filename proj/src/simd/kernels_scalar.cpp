// Scalar reference backend. Mirrors the AVX2 arithmetic graph exactly:
// explicit fma for fused products and 4 virtual lanes with Neumaier
// compensation for reductions, so the two backends agree bitwise.

#include "fns/simd/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace fns::simd::detail {

void cmul_real_scalar(cplx* a, const double* m, std::size_t n) {
    double* p = reinterpret_cast<double*>(a);
    for (std::size_t i = 0; i < n; ++i) {
        p[2 * i] *= m[i];
        p[2 * i + 1] *= m[i];
    }
}

void cmul_scalar(cplx* a, const cplx* m, std::size_t n) {
    double* p = reinterpret_cast<double*>(a);
    const double* q = reinterpret_cast<const double*>(m);
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = p[2 * i], ai = p[2 * i + 1];
        const double mr = q[2 * i], mi = q[2 * i + 1];
        // Same contraction as the AVX2 path: fmsub / fmadd.
        p[2 * i] = std::fma(ar, mr, -(ai * mi));
        p[2 * i + 1] = std::fma(ar, mi, ai * mr);
    }
}

void vmul_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void vmulsub_scalar(double* out, const double* a, const double* b, const double* c,
                    const double* d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::fma(a[i], b[i], -(c[i] * d[i]));
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

void caxpy_scalar(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    double* p = reinterpret_cast<double*>(y);
    const double* q = reinterpret_cast<const double*>(x);
    const double mr = alpha.real(), mi = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = q[2 * i], xi = q[2 * i + 1];
        p[2 * i] += std::fma(xr, mr, -(xi * mi));
        p[2 * i + 1] += std::fma(xr, mi, xi * mr);
    }
}

// Neumaier update for one lane: sum += v with error carry.
static inline void neumaier(double& sum, double& carry, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
        carry += (sum - t) + v;
    else
        carry += (v - t) + sum;
    sum = t;
}

// All reductions run 4 independent lanes over i = 4k+lane, then combine
// lanes in fixed order. The AVX2 backend performs the identical operations
// with the lanes held in one vector register.
template <class Load>
static double reduce4(std::size_t n, Load load) {
    double s[4] = {0, 0, 0, 0}, c[4] = {0, 0, 0, 0};
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4)
        for (int l = 0; l < 4; ++l) neumaier(s[l], c[l], load(i + l));
    for (std::size_t i = n4; i < n; ++i) neumaier(s[i - n4], c[i - n4], load(i));
    double total = 0.0, carry = 0.0;
    for (int l = 0; l < 4; ++l) neumaier(total, carry, s[l] + c[l]);
    return total + carry;
}

double reduce_sum_scalar(const double* x, std::size_t n) {
    return reduce4(n, [&](std::size_t i) { return x[i]; });
}

double reduce_sum_sq_scalar(const double* x, std::size_t n) {
    return reduce4(n, [&](std::size_t i) { return x[i] * x[i]; });
}

double reduce_dot_scalar(const double* x, const double* y, std::size_t n) {
    return reduce4(n, [&](std::size_t i) { return x[i] * y[i]; });
}

double reduce_sum_abs_scalar(const double* x, std::size_t n) {
    return reduce4(n, [&](std::size_t i) { return std::abs(x[i]); });
}

double reduce_abs_max_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

}  // namespace fns::simd::detail

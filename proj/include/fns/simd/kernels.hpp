#pragma once

// Data-parallel inner-loop kernels used by the spectral core: pointwise
// complex/real multiplier application, field algebra, and compensated
// reductions. Each operation has a scalar reference implementation and an
// AVX2 variant; the backend is selected once at startup from CPU features.
//
// The two backends are written against the same arithmetic graph (explicit
// FMA, 4-lane chunked Neumaier reductions), so results are bit-identical
// across backends. Reductions are deterministic regardless of buffer length.

#include <complex>
#include <cstddef>
#include <string>

namespace fns::simd {

enum class Backend { scalar, avx2 };

// Selected once on first use: AVX2+FMA if the CPU supports them, unless the
// environment variable FNS_SIMD is set to "scalar" or "avx2".
Backend active_backend();
std::string backend_name();

// Force a backend (used by the equivalence tests). Returns false if the
// requested backend is unavailable on this CPU.
bool set_backend(Backend b);

using cplx = std::complex<double>;

// a[i] *= m[i], complex times real multiplier (heat factor, brackets, masks).
void cmul_real(cplx* a, const double* m, std::size_t n);

// a[i] *= m[i], complex times complex multiplier (phase ramps, ik factors).
void cmul(cplx* a, const cplx* m, std::size_t n);

// out[i] = a[i] * b[i]
void vmul(double* out, const double* a, const double* b, std::size_t n);

// out[i] = a[i]*b[i] - c[i]*d[i]  (antisymmetric tensor entries u_i w_j - w_i u_j)
void vmulsub(double* out, const double* a, const double* b, const double* c,
             const double* d, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double* y, double alpha, const double* x, std::size_t n);
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);

// Deterministic compensated reductions (4-lane Neumaier, fixed order).
double reduce_sum(const double* x, std::size_t n);
double reduce_sum_sq(const double* x, std::size_t n);
double reduce_dot(const double* x, const double* y, std::size_t n);
double reduce_abs_max(const double* x, std::size_t n);
double reduce_sum_abs(const double* x, std::size_t n);

}  // namespace fns::simd

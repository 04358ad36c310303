#include "fns/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fns::simd {

namespace detail {
void cmul_real_scalar(cplx*, const double*, std::size_t);
void cmul_scalar(cplx*, const cplx*, std::size_t);
void vmul_scalar(double*, const double*, const double*, std::size_t);
void vmulsub_scalar(double*, const double*, const double*, const double*, const double*, std::size_t);
void axpy_scalar(double*, double, const double*, std::size_t);
void caxpy_scalar(cplx*, cplx, const cplx*, std::size_t);
double reduce_sum_scalar(const double*, std::size_t);
double reduce_sum_sq_scalar(const double*, std::size_t);
double reduce_dot_scalar(const double*, const double*, std::size_t);
double reduce_sum_abs_scalar(const double*, std::size_t);
double reduce_abs_max_scalar(const double*, std::size_t);

#ifdef FNS_HAVE_AVX2
void cmul_real_avx2(cplx*, const double*, std::size_t);
void cmul_avx2(cplx*, const cplx*, std::size_t);
void vmul_avx2(double*, const double*, const double*, std::size_t);
void vmulsub_avx2(double*, const double*, const double*, const double*, const double*, std::size_t);
void axpy_avx2(double*, double, const double*, std::size_t);
void caxpy_avx2(cplx*, cplx, const cplx*, std::size_t);
double reduce_sum_avx2(const double*, std::size_t);
double reduce_sum_sq_avx2(const double*, std::size_t);
double reduce_dot_avx2(const double*, const double*, std::size_t);
double reduce_sum_abs_avx2(const double*, std::size_t);
double reduce_abs_max_avx2(const double*, std::size_t);
#endif
}  // namespace detail

namespace {

bool avx2_supported() {
#ifdef FNS_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend pick_initial() {
    if (const char* env = std::getenv("FNS_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend& current() {
    static Backend b = pick_initial();
    return b;
}

}  // namespace

Backend active_backend() { return current(); }

std::string backend_name() { return current() == Backend::avx2 ? "avx2" : "scalar"; }

bool set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported()) return false;
    current() = b;
    return true;
}

#ifdef FNS_HAVE_AVX2
#define FNS_DISPATCH(fn, ...) \
    return current() == Backend::avx2 ? detail::fn##_avx2(__VA_ARGS__) : detail::fn##_scalar(__VA_ARGS__)
#else
#define FNS_DISPATCH(fn, ...) return detail::fn##_scalar(__VA_ARGS__)
#endif

void cmul_real(cplx* a, const double* m, std::size_t n) { FNS_DISPATCH(cmul_real, a, m, n); }
void cmul(cplx* a, const cplx* m, std::size_t n) { FNS_DISPATCH(cmul, a, m, n); }
void vmul(double* out, const double* a, const double* b, std::size_t n) {
    FNS_DISPATCH(vmul, out, a, b, n);
}
void vmulsub(double* out, const double* a, const double* b, const double* c, const double* d,
             std::size_t n) {
    FNS_DISPATCH(vmulsub, out, a, b, c, d, n);
}
void axpy(double* y, double alpha, const double* x, std::size_t n) {
    FNS_DISPATCH(axpy, y, alpha, x, n);
}
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    FNS_DISPATCH(caxpy, y, alpha, x, n);
}
double reduce_sum(const double* x, std::size_t n) { FNS_DISPATCH(reduce_sum, x, n); }
double reduce_sum_sq(const double* x, std::size_t n) { FNS_DISPATCH(reduce_sum_sq, x, n); }
double reduce_dot(const double* x, const double* y, std::size_t n) {
    FNS_DISPATCH(reduce_dot, x, y, n);
}
double reduce_sum_abs(const double* x, std::size_t n) { FNS_DISPATCH(reduce_sum_abs, x, n); }
double reduce_abs_max(const double* x, std::size_t n) { FNS_DISPATCH(reduce_abs_max, x, n); }

}  // namespace fns::simd

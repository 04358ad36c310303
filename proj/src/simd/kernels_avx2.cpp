// AVX2 backend. This translation unit is compiled with -mavx2 -mfma and is
// only entered after a runtime CPU feature check.

#include "fns/simd/kernels.hpp"

#ifdef __AVX2__
#include <immintrin.h>

#include <cmath>

namespace fns::simd::detail {

void cmul_real_avx2(cplx* a, const double* m, std::size_t n) {
    double* p = reinterpret_cast<double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        __m128d mm = _mm_loadu_pd(m + i);
        __m256d md = _mm256_set_m128d(_mm_unpackhi_pd(mm, mm), _mm_unpacklo_pd(mm, mm));
        _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, md));
    }
    for (; i < n; ++i) {
        p[2 * i] *= m[i];
        p[2 * i + 1] *= m[i];
    }
}

void cmul_avx2(cplx* a, const cplx* m, std::size_t n) {
    double* p = reinterpret_cast<double*>(a);
    const double* q = reinterpret_cast<const double*>(m);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);   // ar0 ai0 ar1 ai1
        __m256d w = _mm256_loadu_pd(q + 2 * i);   // mr0 mi0 mr1 mi1
        __m256d ar = _mm256_unpacklo_pd(v, v);    // ar0 ar0 ar1 ar1
        __m256d ai = _mm256_unpackhi_pd(v, v);
        __m256d mr = _mm256_unpacklo_pd(w, w);
        __m256d mi = _mm256_unpackhi_pd(w, w);
        // re = fma(ar, mr, -(ai*mi)); im = fma(ar, mi, ai*mr)
        __m256d re = _mm256_fmsub_pd(ar, mr, _mm256_mul_pd(ai, mi));
        __m256d im = _mm256_fmadd_pd(ar, mi, _mm256_mul_pd(ai, mr));
        _mm256_storeu_pd(p + 2 * i, _mm256_unpacklo_pd(re, im));
    }
    for (; i < n; ++i) {
        const double ar = p[2 * i], ai = p[2 * i + 1];
        const double mr = q[2 * i], mi = q[2 * i + 1];
        p[2 * i] = std::fma(ar, mr, -(ai * mi));
        p[2 * i + 1] = std::fma(ar, mi, ai * mr);
    }
}

void vmul_avx2(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void vmulsub_avx2(double* out, const double* a, const double* b, const double* c,
                  const double* d, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cd = _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(d + i));
        _mm256_storeu_pd(out + i, _mm256_fmsub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), cd));
    }
    for (; i < n; ++i) out[i] = std::fma(a[i], b[i], -(c[i] * d[i]));
}

void axpy_avx2(double* y, double alpha, const double* x, std::size_t n) {
    __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

void caxpy_avx2(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    double* p = reinterpret_cast<double*>(y);
    const double* q = reinterpret_cast<const double*>(x);
    const double mr = alpha.real(), mi = alpha.imag();
    __m256d vmr = _mm256_set1_pd(mr), vmi = _mm256_set1_pd(mi);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(q + 2 * i);
        __m256d xr = _mm256_unpacklo_pd(v, v);
        __m256d xi = _mm256_unpackhi_pd(v, v);
        __m256d re = _mm256_fmsub_pd(xr, vmr, _mm256_mul_pd(xi, vmi));
        __m256d im = _mm256_fmadd_pd(xr, vmi, _mm256_mul_pd(xi, vmr));
        __m256d upd = _mm256_unpacklo_pd(re, im);
        _mm256_storeu_pd(p + 2 * i, _mm256_add_pd(_mm256_loadu_pd(p + 2 * i), upd));
    }
    for (; i < n; ++i) {
        const double xr = q[2 * i], xi = q[2 * i + 1];
        p[2 * i] += std::fma(xr, mr, -(xi * mi));
        p[2 * i + 1] += std::fma(xr, mi, xi * mr);
    }
}

// 4-lane Neumaier with the lanes in one register; identical per-lane
// arithmetic to the scalar reference.
namespace {

struct Acc4 {
    __m256d sum = _mm256_setzero_pd();
    __m256d carry = _mm256_setzero_pd();
    inline void add(__m256d v) {
        __m256d t = _mm256_add_pd(sum, v);
        __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
        __m256d asum = _mm256_and_pd(sum, abs_mask);
        __m256d av = _mm256_and_pd(v, abs_mask);
        __m256d big_first = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
        __m256d small_first = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
        __m256d corr = _mm256_blendv_pd(small_first, big_first, _mm256_cmp_pd(asum, av, _CMP_GE_OQ));
        carry = _mm256_add_pd(carry, corr);
        sum = t;
    }
};

static inline void neumaier1(double& sum, double& carry, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
        carry += (sum - t) + v;
    else
        carry += (v - t) + sum;
    sum = t;
}

template <class LoadVec, class LoadOne>
static double reduce4_avx2(std::size_t n, LoadVec loadv, LoadOne load1) {
    Acc4 acc;
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) acc.add(loadv(i));
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, acc.sum);
    _mm256_store_pd(c, acc.carry);
    for (std::size_t i = n4; i < n; ++i) neumaier1(s[i - n4], c[i - n4], load1(i));
    double total = 0.0, carry = 0.0;
    for (int l = 0; l < 4; ++l) neumaier1(total, carry, s[l] + c[l]);
    return total + carry;
}

}  // namespace

double reduce_sum_avx2(const double* x, std::size_t n) {
    return reduce4_avx2(
        n, [&](std::size_t i) { return _mm256_loadu_pd(x + i); },
        [&](std::size_t i) { return x[i]; });
}

double reduce_sum_sq_avx2(const double* x, std::size_t n) {
    return reduce4_avx2(
        n,
        [&](std::size_t i) {
            __m256d v = _mm256_loadu_pd(x + i);
            return _mm256_mul_pd(v, v);
        },
        [&](std::size_t i) { return x[i] * x[i]; });
}

double reduce_dot_avx2(const double* x, const double* y, std::size_t n) {
    return reduce4_avx2(
        n,
        [&](std::size_t i) { return _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)); },
        [&](std::size_t i) { return x[i] * y[i]; });
}

double reduce_sum_abs_avx2(const double* x, std::size_t n) {
    __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return reduce4_avx2(
        n, [&](std::size_t i) { return _mm256_and_pd(_mm256_loadu_pd(x + i), abs_mask); },
        [&](std::size_t i) { return std::abs(x[i]); });
}

double reduce_abs_max_avx2(const double* x, std::size_t n) {
    __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vm = _mm256_max_pd(vm, _mm256_and_pd(_mm256_loadu_pd(x + i), abs_mask));
    alignas(32) double m4[4];
    _mm256_store_pd(m4, vm);
    double m = std::max(std::max(m4[0], m4[1]), std::max(m4[2], m4[3]));
    for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

}  // namespace fns::simd::detail

#endif  // __AVX2__

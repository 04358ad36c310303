#include "fns/core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "fns/simd/kernels.hpp"

namespace fns {

namespace {

// Plan cache. Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so they
// are reproducible run-to-run and executable on any array via
// fftw_execute_dft. Creation is serialized; execution is thread-safe.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan plan3d(int n3, int n2, int n1, int sign) {
        return get({3, n3, n2, n1, 0, sign}, [&](fftw_complex* buf) {
            return fftw_plan_dft_3d(n3, n2, n1, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }, std::size_t(n3) * n2 * n1);
    }

    fftw_plan plan2d(int n2, int n1, int sign) {
        return get({2, n2, n1, 0, 0, sign}, [&](fftw_complex* buf) {
            return fftw_plan_dft_2d(n2, n1, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }, std::size_t(n2) * n1);
    }

    fftw_plan plan1d(int n, int sign) {
        return get({1, n, 0, 0, 0, sign}, [&](fftw_complex* buf) {
            return fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }, std::size_t(n));
    }

    // Batched 1D transforms along the slowest axis of an (n, howmany) block:
    // element (j, h) at in[j*howmany + h].
    fftw_plan plan_lines(int n, int howmany, int sign) {
        return get({4, n, howmany, 0, 0, sign}, [&](fftw_complex* buf) {
            int dims[1] = {n};
            return fftw_plan_many_dft(1, dims, howmany, buf, nullptr, howmany, 1, buf, nullptr,
                                      howmany, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }, std::size_t(n) * howmany);
    }

  private:
    using Key = std::tuple<int, int, int, int, int, int>;

    template <class Make>
    fftw_plan get(Key key, Make make, std::size_t scratch_elems) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_complex* buf = fftw_alloc_complex(scratch_elems);
        if (!buf) throw std::bad_alloc();
        fftw_plan p = make(buf);
        fftw_free(buf);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_[key] = p;
        return p;
    }

    std::mutex mu_;
    std::map<Key, fftw_plan> plans_;
};

inline fftw_complex* fc(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// (-1)^m parity factor accounting for the centered coordinate origin.
inline double parity(int m) { return (m & 1) ? -1.0 : 1.0; }

void scale_centered(cplx* coeffs, const GridSpec& g, double amp) {
    std::vector<double> s1(g.n1), s2(g.n2), s3(g.n3);
    for (int m = 0; m < g.n1; ++m) s1[m] = parity(m);
    for (int m = 0; m < g.n2; ++m) s2[m] = parity(m);
    for (int m = 0; m < g.n3; ++m) s3[m] = parity(m);
    std::vector<double> row(g.n1);
    for (int m3 = 0; m3 < g.n3; ++m3)
        for (int m2 = 0; m2 < g.n2; ++m2) {
            const double f = amp * s3[m3] * s2[m2];
            for (int m1 = 0; m1 < g.n1; ++m1) row[m1] = f * s1[m1];
            simd::cmul_real(coeffs + g.index(m3, m2, 0), row.data(), g.n1);
        }
}

}  // namespace

SpectralField to_spectral(const Field& f) {
    if (!f.finite()) throw std::invalid_argument("to_spectral: non-finite values");
    const GridSpec& g = f.grid();
    SpectralField F(g, f.components());
    fftw_plan p = PlanCache::instance().plan3d(g.n3, g.n2, g.n1, FFTW_FORWARD);
    const double amp = 1.0 / (double(g.n3) * std::sqrt(double(g.n1) * g.n2));
    for (int c = 0; c < f.components(); ++c) {
        cplx* out = F.comp(c);
        const double* in = f.comp(c);
        for (std::size_t i = 0; i < g.points(); ++i) out[i] = cplx(in[i], 0.0);
        fftw_execute_dft(p, fc(out), fc(out));
        scale_centered(out, g, amp);
    }
    return F;
}

Field from_spectral(const SpectralField& F) {
    const GridSpec& g = F.grid();
    Field f(g, F.components());
    fftw_plan p = PlanCache::instance().plan3d(g.n3, g.n2, g.n1, FFTW_BACKWARD);
    const double amp = 1.0 / std::sqrt(double(g.n1) * g.n2);
    std::vector<cplx> buf(g.points());
    for (int c = 0; c < F.components(); ++c) {
        std::copy(F.comp(c), F.comp(c) + g.points(), buf.data());
        scale_centered(buf.data(), g, amp);
        fftw_execute_dft(p, fc(buf.data()), fc(buf.data()));
        double* out = f.comp(c);
        for (std::size_t i = 0; i < g.points(); ++i) out[i] = buf[i].real();
    }
    return f;
}

void fft_x3_forward(const Field& f, int c, cplx* out) {
    const GridSpec& g = f.grid();
    const std::size_t slab = std::size_t(g.n1) * g.n2;
    const double* in = f.comp(c);
    for (std::size_t i = 0; i < g.points(); ++i) out[i] = cplx(in[i], 0.0);
    fftw_plan p = PlanCache::instance().plan_lines(g.n3, int(slab), FFTW_FORWARD);
    fftw_execute_dft(p, fc(out), fc(out));
    const double amp = 1.0 / g.n3;
    for (int m3 = 0; m3 < g.n3; ++m3) {
        const double s = amp * parity(m3);
        cplx* slabp = out + std::size_t(m3) * slab;
        for (std::size_t i = 0; i < slab; ++i) slabp[i] *= s;
    }
}

void fft_x3_inverse(const cplx* in, Field& f, int c) {
    const GridSpec& g = f.grid();
    const std::size_t slab = std::size_t(g.n1) * g.n2;
    std::vector<cplx> buf(in, in + g.points());
    for (int m3 = 0; m3 < g.n3; ++m3) {
        const double s = parity(m3);
        cplx* slabp = buf.data() + std::size_t(m3) * slab;
        for (std::size_t i = 0; i < slab; ++i) slabp[i] *= s;
    }
    fftw_plan p = PlanCache::instance().plan_lines(g.n3, int(slab), FFTW_BACKWARD);
    fftw_execute_dft(p, fc(buf.data()), fc(buf.data()));
    double* out = f.comp(c);
    for (std::size_t i = 0; i < g.points(); ++i) out[i] = buf[i].real();
}

void fft2_forward(cplx* slab, int n2, int n1) {
    fftw_execute_dft(PlanCache::instance().plan2d(n2, n1, FFTW_FORWARD), fc(slab), fc(slab));
}
void fft2_inverse(cplx* slab, int n2, int n1) {
    fftw_execute_dft(PlanCache::instance().plan2d(n2, n1, FFTW_BACKWARD), fc(slab), fc(slab));
}
void fft1_forward(cplx* row, int n) {
    fftw_execute_dft(PlanCache::instance().plan1d(n, FFTW_FORWARD), fc(row), fc(row));
}
void fft1_inverse(cplx* row, int n) {
    fftw_execute_dft(PlanCache::instance().plan1d(n, FFTW_BACKWARD), fc(row), fc(row));
}

}  // namespace fns

#include "fns/geometry/interp.hpp"

#include <cmath>

#include "fns/core/fft.hpp"

namespace fns {

double bspline5(double t) {
    // (1/120) sum_j (-1)^j C(6,j) (t + 3 - j)_+^5
    static const double binom[7] = {1, 6, 15, 20, 15, 6, 1};
    double s = 0.0;
    for (int j = 0; j <= 6; ++j) {
        const double u = t + 3.0 - j;
        if (u <= 0.0) break;
        const double u5 = u * u * u * u * u;
        s += (j & 1 ? -1.0 : 1.0) * binom[j] * u5;
    }
    return s / 120.0;
}

namespace {

// DFT symbol of the sampled quintic B-spline (b(0), b(+-1), b(+-2)) =
// (66, 26, 1)/120.
inline double bspline_symbol(int m, int n) {
    const double w = kTwoPi * GridSpec::signed_index(m, n) / n;
    return (66.0 + 52.0 * std::cos(w) + 2.0 * std::cos(2.0 * w)) / 120.0;
}

}  // namespace

SplineInterpolant::SplineInterpolant(const Field& f) : grid_(f.grid()), ncomp_(f.components()) {
    SpectralField F = to_spectral(f);
    const GridSpec& g = grid_;
    std::vector<double> s1(g.n1), s2(g.n2), s3(g.n3);
    for (int m = 0; m < g.n1; ++m) s1[m] = 1.0 / bspline_symbol(m, g.n1);
    for (int m = 0; m < g.n2; ++m) s2[m] = 1.0 / bspline_symbol(m, g.n2);
    for (int m = 0; m < g.n3; ++m) s3[m] = 1.0 / bspline_symbol(m, g.n3);
    for (int c = 0; c < ncomp_; ++c) {
        cplx* d = F.comp(c);
        for (int m3 = 0; m3 < g.n3; ++m3)
            for (int m2 = 0; m2 < g.n2; ++m2) {
                const double f23 = s3[m3] * s2[m2];
                cplx* row = d + g.index(m3, m2, 0);
                for (int m1 = 0; m1 < g.n1; ++m1) row[m1] *= f23 * s1[m1];
            }
    }
    Field coeffs = from_spectral(F);
    coeff_.assign(coeffs.data(), coeffs.data() + coeffs.size());
}

double SplineInterpolant::eval(int c, const Vec3& p) const {
    const GridSpec& g = grid_;
    const double u1 = (p.x + g.L) / g.dx1();
    const double u2 = (p.y + g.L) / g.dx2();
    const double u3 = (p.z + kPi) / g.dx3();
    const int b1 = int(std::floor(u1)), b2 = int(std::floor(u2)), b3 = int(std::floor(u3));
    double w1[6], w2[6], w3[6];
    int i1[6], i2[6], i3[6];
    auto wrap = [](int i, int n) {
        i %= n;
        return i < 0 ? i + n : i;
    };
    for (int j = 0; j < 6; ++j) {
        const int o = j - 2;
        w1[j] = bspline5(u1 - (b1 + o));
        w2[j] = bspline5(u2 - (b2 + o));
        w3[j] = bspline5(u3 - (b3 + o));
        i1[j] = wrap(b1 + o, g.n1);
        i2[j] = wrap(b2 + o, g.n2);
        i3[j] = wrap(b3 + o, g.n3);
    }
    const double* base = coeff_.data() + std::size_t(c) * g.points();
    double acc = 0.0;
    for (int a3 = 0; a3 < 6; ++a3) {
        if (w3[a3] == 0.0) continue;
        double acc2 = 0.0;
        for (int a2 = 0; a2 < 6; ++a2) {
            if (w2[a2] == 0.0) continue;
            const double* row = base + g.index(i3[a3], i2[a2], 0);
            double acc1 = 0.0;
            for (int a1 = 0; a1 < 6; ++a1) acc1 += w1[a1] * row[i1[a1]];
            acc2 += w2[a2] * acc1;
        }
        acc += w3[a3] * acc2;
    }
    return acc;
}

Vec3 SplineInterpolant::eval_vec(const Vec3& p) const {
    return {eval(0, p), eval(1, p), eval(2, p)};
}

}  // namespace fns

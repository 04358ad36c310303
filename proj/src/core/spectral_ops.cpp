#include "fns/core/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "fns/core/fft.hpp"

namespace fns {

namespace {

// Apply op(k1,k2,k3, in...) over all modes of each component.
template <class Op>
void for_modes(const GridSpec& g, Op op) {
    for (int m3 = 0; m3 < g.n3; ++m3) {
        const double k3 = g.k3(m3);
        for (int m2 = 0; m2 < g.n2; ++m2) {
            const double k2 = g.k2(m2);
            for (int m1 = 0; m1 < g.n1; ++m1) op(g.index(m3, m2, m1), g.k1(m1), k2, k3);
        }
    }
}

cplx ipow(int a) {
    static const cplx tab[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return tab[a & 3];
}

}  // namespace

SpectralField diff(const SpectralField& f, std::array<int, 3> a) {
    const int total = a[0] + a[1] + a[2];
    if (a[0] < 0 || a[1] < 0 || a[2] < 0 || total > 4)
        throw std::invalid_argument("diff: multiindex order must be in [0,4]");
    const GridSpec& g = f.grid();
    SpectralField out = f;
    const cplx phase = ipow(total);
    for (int c = 0; c < f.components(); ++c) {
        cplx* d = out.comp(c);
        for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
            double m = 1.0;
            for (int j = 0; j < a[0]; ++j) m *= k1;
            for (int j = 0; j < a[1]; ++j) m *= k2;
            for (int j = 0; j < a[2]; ++j) m *= k3;
            d[i] *= phase * m;
        });
    }
    return out;
}

Field diff(const Field& f, std::array<int, 3> a) { return from_spectral(diff(to_spectral(f), a)); }

SpectralField laplacian(const SpectralField& f) {
    const GridSpec& g = f.grid();
    SpectralField out = f;
    for (int c = 0; c < f.components(); ++c) {
        cplx* d = out.comp(c);
        for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
            d[i] *= -(k1 * k1 + k2 * k2 + k3 * k3);
        });
    }
    return out;
}

Field laplacian(const Field& f) { return from_spectral(laplacian(to_spectral(f))); }

SpectralField divergence(const SpectralField& v) {
    if (v.components() != 3) throw std::invalid_argument("divergence: needs 3 components");
    const GridSpec& g = v.grid();
    SpectralField out(g, 1);
    const cplx* v1 = v.comp(0);
    const cplx* v2 = v.comp(1);
    const cplx* v3 = v.comp(2);
    cplx* d = out.comp(0);
    for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
        d[i] = cplx(0, 1) * (k1 * v1[i] + k2 * v2[i] + k3 * v3[i]);
    });
    return out;
}

Field divergence(const Field& v) { return from_spectral(divergence(to_spectral(v))); }

SpectralField curl(const SpectralField& v) {
    if (v.components() != 3) throw std::invalid_argument("curl: needs 3 components");
    const GridSpec& g = v.grid();
    SpectralField out(g, 3);
    const cplx* v1 = v.comp(0);
    const cplx* v2 = v.comp(1);
    const cplx* v3 = v.comp(2);
    cplx* o1 = out.comp(0);
    cplx* o2 = out.comp(1);
    cplx* o3 = out.comp(2);
    for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
        const cplx I(0, 1);
        o1[i] = I * (k2 * v3[i] - k3 * v2[i]);
        o2[i] = I * (k3 * v1[i] - k1 * v3[i]);
        o3[i] = I * (k1 * v2[i] - k2 * v1[i]);
    });
    return out;
}

Field curl(const Field& v) { return from_spectral(curl(to_spectral(v))); }

SpectralField gradient(const SpectralField& f) {
    if (f.components() != 1) throw std::invalid_argument("gradient: needs scalar");
    const GridSpec& g = f.grid();
    SpectralField out(g, 3);
    const cplx* s = f.comp(0);
    cplx* o1 = out.comp(0);
    cplx* o2 = out.comp(1);
    cplx* o3 = out.comp(2);
    for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
        const cplx I(0, 1);
        o1[i] = I * k1 * s[i];
        o2[i] = I * k2 * s[i];
        o3[i] = I * k3 * s[i];
    });
    return out;
}

SpectralField fractional_bracket(const SpectralField& f, double beta, double t) {
    if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("fractional_bracket: beta in [0,1)");
    if (!(t > 0.0)) throw std::invalid_argument("fractional_bracket: t > 0");
    const GridSpec& g = f.grid();
    SpectralField out = f;
    if (beta == 0.0) return out;
    for (int c = 0; c < f.components(); ++c) {
        cplx* d = out.comp(c);
        for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
            d[i] *= std::pow(1.0 + t * (k1 * k1 + k2 * k2 + k3 * k3), 0.5 * beta);
        });
    }
    return out;
}

Field fractional_bracket(const Field& f, double beta, double t) {
    return from_spectral(fractional_bracket(to_spectral(f), beta, t));
}

void heat_multiply(SpectralField& f, double t) {
    const GridSpec& g = f.grid();
    for (int c = 0; c < f.components(); ++c) {
        cplx* d = f.comp(c);
        for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
            d[i] *= std::exp(-t * (k1 * k1 + k2 * k2 + k3 * k3));
        });
    }
}

Field heat_apply(const Field& f, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_apply: t > 0");
    SpectralField F = to_spectral(f);
    heat_multiply(F, t);
    return from_spectral(F);
}

void dealias(SpectralField& f) {
    const GridSpec& g = f.grid();
    for (int c = 0; c < f.components(); ++c) {
        cplx* d = f.comp(c);
        for (int m3 = 0; m3 < g.n3; ++m3)
            for (int m2 = 0; m2 < g.n2; ++m2)
                for (int m1 = 0; m1 < g.n1; ++m1)
                    if (!g.mode_kept(m1, m2, m3)) d[g.index(m3, m2, m1)] = cplx(0, 0);
    }
}

void project_divfree(SpectralField& v) {
    if (v.components() != 3) throw std::invalid_argument("project_divfree: needs 3 components");
    const GridSpec& g = v.grid();
    cplx* v1 = v.comp(0);
    cplx* v2 = v.comp(1);
    cplx* v3 = v.comp(2);
    for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
        const double k2n = k1 * k1 + k2 * k2 + k3 * k3;
        if (k2n == 0.0) return;
        const cplx kv = (k1 * v1[i] + k2 * v2[i] + k3 * v3[i]) / k2n;
        v1[i] -= k1 * kv;
        v2[i] -= k2 * kv;
        v3[i] -= k3 * kv;
    });
}

double relative_divergence(const SpectralField& v) {
    const GridSpec& g = v.grid();
    double div2 = 0.0, grad2 = 0.0;
    const cplx* v1 = v.comp(0);
    const cplx* v2 = v.comp(1);
    const cplx* v3 = v.comp(2);
    for_modes(g, [&](std::size_t i, double k1, double k2, double k3) {
        div2 += std::norm(k1 * v1[i] + k2 * v2[i] + k3 * v3[i]);
        grad2 += (k1 * k1 + k2 * k2 + k3 * k3) *
                 (std::norm(v1[i]) + std::norm(v2[i]) + std::norm(v3[i]));
    });
    return grad2 > 0.0 ? std::sqrt(div2 / grad2) : 0.0;
}

double parseval_physical(const Field& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.data()[i] * f.data()[i];
    return s;
}

double parseval_spectral(const SpectralField& f) { return f.grid().n3 * f.coeff_norm_sq(); }

}  // namespace fns

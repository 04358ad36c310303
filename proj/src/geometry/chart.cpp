#include "fns/geometry/chart.hpp"

#include <cmath>
#include <stdexcept>

#include "fns/core/tolerances.hpp"

namespace fns {

namespace {

// Levi-Civita symbol.
inline double eps3(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

}  // namespace

ChartMap::ChartMap(std::shared_ptr<const Curve> curve, double r) : curve_(std::move(curve)), r_(r) {
    if (!(r > 0.0)) throw std::invalid_argument("ChartMap: r must be positive");
    identity_ = dynamic_cast<const StraightLineCurve*>(curve_.get()) != nullptr;

    const int ntab = 4096;
    table_.resize(ntab);
    for (int i = 0; i < ntab; ++i) {
        Vec3 p = curve_->position(kTwoPi * i / ntab);
        p.z = wrap_pi(p.z);
        table_[i] = p;
    }

    if (identity_) {
        injectivity_radius_ = nominal_radius();
        domain_radius_ = nominal_radius();
    } else {
        Rng rng(0x9e3779b9u);
        injectivity_radius_ = measure_injectivity(rng, 4000);
        // Safety margin: the sampled estimate is soft near the focal set and
        // the determinant degenerates right at it.
        domain_radius_ = std::min(nominal_radius(), 0.95 * injectivity_radius_);
    }
}

Vec3 ChartMap::phi(const Vec3& x) const {
    Vec3 t, n, b;
    curve_->frame(x.z, t, n, b);
    Vec3 y = curve_->position(x.z) + x.x * n + x.y * b;
    y.z = wrap_pi(y.z);
    return y;
}

void ChartMap::jacobian(const Vec3& x, Mat3& J, double& D) const {
    SJet3 t, n, b;
    curve_->frame_jets(x.z, t, n, b);
    const Vec3 tv = t.value(), nv = n.value(), bv = b.value();
    const Vec3 np = n.deriv1(), bp = b.deriv1();
    const double cs = curve_->speed();
    const double Dv = cs + x.x * dot(np, tv) + x.y * dot(bp, tv);
    const double Ev = x.y * dot(bp, nv);
    const double Fv = x.x * dot(np, bv);
    const Vec3 col2 = Dv * tv + Ev * nv + Fv * bv;
    for (int i = 0; i < 3; ++i) {
        J[i][0] = nv[i];
        J[i][1] = bv[i];
        J[i][2] = col2[i];
    }
    D = Dv;
}

ChartCoeffs ChartMap::coeffs(const Vec3& x) const {
    ChartCoeffs c;
    jacobian(x, c.J, c.D);
    Mat3 JTJ;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += c.J[k][i] * c.J[k][j];
            JTJ[i][j] = s;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c.G[i][j] = JTJ[i][j] / c.D;
    c.M = inverse(JTJ);
    const double cs = curve_->speed();
    c.G0 = Mat3();
    c.G0[0][0] = c.G0[1][1] = 1.0 / cs;
    c.G0[2][2] = cs;
    return c;
}

void ChartMap::coeff_jets(const Vec3& x, Jet2Mat& J, Jet2& D, Jet2Mat& G, Jet2Mat& M) const {
    SJet3 t, n, b;
    curve_->frame_jets(x.z, t, n, b);
    const SJet3 np = n.derivative(), bp = b.derivative();

    auto j3 = [](const SJet& s) { return Jet2::of_x3(s.d[0], s.d[1], s.d[2]); };
    const Jet2 X1 = Jet2::coordinate(x.x, 0);
    const Jet2 X2 = Jet2::coordinate(x.y, 1);

    const Jet2 Dj = Jet2::constant(curve_->speed()) + X1 * j3(dot(np, t)) + X2 * j3(dot(bp, t));
    const Jet2 Ej = X2 * j3(dot(bp, n));
    const Jet2 Fj = X1 * j3(dot(np, b));

    auto comp = [&](const SJet3& v, int i) { return j3(i == 0 ? v.x : (i == 1 ? v.y : v.z)); };
    for (int i = 0; i < 3; ++i) {
        J[i][0] = comp(n, i);
        J[i][1] = comp(b, i);
        J[i][2] = Dj * comp(t, i) + Ej * comp(n, i) + Fj * comp(b, i);
    }
    Jet2Mat JTJ = jet_mat_mul_t(J);
    D = jet_det(J);
    const Jet2 invD = D.reciprocal();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G[i][j] = JTJ[i][j] * invD;
    M = jet_inverse(JTJ);
}

Vec3 ChartMap::modified_curl(const SmoothVec& eta, const Vec3& x) const {
    Jet2Mat Jj, Gj, Mj;
    Jet2 Dj;
    coeff_jets(x, Jj, Dj, Gj, Mj);
    const Vec3 ev = eta.value(x);
    Vec3 de[3];
    for (int a = 0; a < 3; ++a) de[a] = eta.deriv(x, a);

    // [curl_Phi eta]_i = eps_{ijk} [ (d_j G_{kl}) eta_l + G_{kl} d_j eta_l ]
    Vec3 out{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double e = eps3(i, j, k);
                if (e == 0.0) continue;
                double s = 0;
                for (int l = 0; l < 3; ++l) s += Gj[k][l].g[j] * ev[l] + Gj[k][l].v * de[j][l];
                out[i] += e * s;
            }
    return out;
}

Vec3 ChartMap::modified_laplacian(const SmoothVec& eta, const Vec3& x) const {
    Jet2Mat Jj, Gj, Mj;
    Jet2 Dj;
    coeff_jets(x, Jj, Dj, Gj, Mj);
    const Vec3 ev = eta.value(x);
    Vec3 de[3], d2e[3][3];
    for (int a = 0; a < 3; ++a) de[a] = eta.deriv(x, a);
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) d2e[a][b] = d2e[b][a] = eta.deriv2(x, a, b);

    // term1 = D M grad(D^{-1} div eta)
    const double Dv = Dj.v;
    double diveta = de[0][0] + de[1][1] + de[2][2];
    Vec3 grad_div{0, 0, 0};
    for (int a = 0; a < 3; ++a) grad_div[a] = d2e[a][0][0] + d2e[a][1][1] + d2e[a][2][2];
    Vec3 term1{0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        double s = 0;
        for (int a = 0; a < 3; ++a) {
            const double dinvD = -Dj.g[a] / (Dv * Dv);
            s += Mj[i][a].v * (dinvD * diveta + grad_div[a] / Dv);
        }
        term1[i] = Dv * s;
    }

    // w = curl_Phi eta and its gradient, then term2 = -curl(G w).
    Vec3 w{0, 0, 0};
    Vec3 dw[3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m)
            for (int nn = 0; nn < 3; ++nn) {
                const double e = eps3(l, m, nn);
                if (e == 0.0) continue;
                for (int q = 0; q < 3; ++q) {
                    w[l] += e * (Gj[nn][q].g[m] * ev[q] + Gj[nn][q].v * de[m][q]);
                    for (int j = 0; j < 3; ++j)
                        dw[j][l] += e * (Gj[nn][q].hess(j, m) * ev[q] + Gj[nn][q].g[m] * de[j][q] +
                                         Gj[nn][q].g[j] * de[m][q] + Gj[nn][q].v * d2e[j][m][q]);
                }
            }
    Vec3 term2{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double e = eps3(i, j, k);
                if (e == 0.0) continue;
                double s = 0;
                for (int l = 0; l < 3; ++l) s += Gj[k][l].g[j] * w[l] + Gj[k][l].v * dw[j][l];
                term2[i] -= e * s;
            }
    return term1 + term2;
}

OperatorCoeffs ChartMap::coefficients(const Vec3& x) const {
    OperatorCoeffs oc;
    // Polynomial probes with analytic derivatives. The plain curl/Laplacian
    // contributions are subtracted to leave the correction tensors.
    auto probe_const = [&](int q) {
        SmoothVec f;
        f.value = [q](const Vec3&) { Vec3 v{0, 0, 0}; v[q] = 1.0; return v; };
        f.deriv = [](const Vec3&, int) { return Vec3{0, 0, 0}; };
        f.deriv2 = [](const Vec3&, int, int) { return Vec3{0, 0, 0}; };
        return f;
    };
    auto probe_linear = [&](int q, int a, const Vec3& x0) {
        SmoothVec f;
        f.value = [q, a, x0](const Vec3& p) {
            Vec3 v{0, 0, 0};
            v[q] = p[a] - x0[a];
            return v;
        };
        f.deriv = [q, a](const Vec3&, int c) {
            Vec3 v{0, 0, 0};
            if (c == a) v[q] = 1.0;
            return v;
        };
        f.deriv2 = [](const Vec3&, int, int) { return Vec3{0, 0, 0}; };
        return f;
    };
    auto probe_quadratic = [&](int q, int a, int b, const Vec3& x0) {
        SmoothVec f;
        f.value = [q, a, b, x0](const Vec3& p) {
            Vec3 v{0, 0, 0};
            v[q] = (p[a] - x0[a]) * (p[b] - x0[b]);
            return v;
        };
        f.deriv = [q, a, b, x0](const Vec3& p, int c) {
            Vec3 v{0, 0, 0};
            if (c == a) v[q] += p[b] - x0[b];
            if (c == b) v[q] += p[a] - x0[a];
            return v;
        };
        f.deriv2 = [q, a, b](const Vec3&, int c, int d) {
            Vec3 v{0, 0, 0};
            if (c == a && d == b) v[q] += 1.0;
            if (c == b && d == a) v[q] += 1.0;
            return v;
        };
        return f;
    };

    for (int q = 0; q < 3; ++q) {
        const Vec3 c = modified_curl(probe_const(q), x);       // = F e_q
        const Vec3 lap = modified_laplacian(probe_const(q), x);  // = C e_q
        for (int i = 0; i < 3; ++i) {
            oc.F[i][q] = c[i];
            oc.C[i][q] = lap[i];
        }
    }
    for (int a = 0; a < 3; ++a)
        for (int q = 0; q < 3; ++q) {
            SmoothVec f = probe_linear(q, a, x);
            Vec3 c = modified_curl(f, x);
            Vec3 lap = modified_laplacian(f, x);
            // subtract the plain curl: curl(e_q x_a) at x0: eps_{i a q}
            for (int i = 0; i < 3; ++i) {
                oc.E[a][i][q] = c[i] - eps3(i, a, q);
                oc.B[a][i][q] = lap[i];
            }
        }
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b)
            for (int q = 0; q < 3; ++q) {
                SmoothVec f = probe_quadratic(q, a, b, x);
                Vec3 lap = modified_laplacian(f, x);
                // plain Laplacian of the probe: 2 delta_{ab} e_q
                Vec3 plain{0, 0, 0};
                if (a == b) plain[q] = 2.0;
                for (int i = 0; i < 3; ++i) {
                    const double val = lap[i] - plain[i];
                    // val = (A^{ab} + A^{ba})_{iq}; store the symmetric part
                    oc.A[a][b][i][q] = val / 2.0;
                    oc.A[b][a][i][q] = val / 2.0;
                }
            }
    return oc;
}

double ChartMap::dist_to_curve(const Vec3& y, double* s_min) const {
    const int ntab = int(table_.size());
    // coarse scan
    double best = 1e300;
    int ibest = 0;
    for (int i = 0; i < ntab; ++i) {
        const double dx = y.x - table_[i].x;
        const double dy = y.y - table_[i].y;
        const double dz = wrap_pi(y.z - table_[i].z);
        const double d2 = dx * dx + dy * dy + dz * dz;
        if (d2 < best) {
            best = d2;
            ibest = i;
        }
    }
    // Newton polish on f(s) = |y - gamma(s)|^2 (vertical difference wrapped)
    double s = kTwoPi * ibest / ntab;
    for (int it = 0; it < tol::newton_max_iter; ++it) {
        Vec3 d[3];
        curve_->eval(s, 2, d);
        const double dx = y.x - d[0].x, dy = y.y - d[0].y;
        const double dz = wrap_pi(y.z - d[0].z);
        const double f1 = -2.0 * (dx * d[1].x + dy * d[1].y + dz * d[1].z);
        const double f2 = 2.0 * (d[1].x * d[1].x + d[1].y * d[1].y + d[1].z * d[1].z) -
                          2.0 * (dx * d[2].x + dy * d[2].y + dz * d[2].z);
        if (f2 <= 0.0) break;  // fall back to the scan value
        const double step = f1 / f2;
        s -= step;
        if (std::abs(step) < tol::newton_point) break;
    }
    Vec3 p = curve_->position(s);
    const double dx = y.x - p.x, dy = y.y - p.y, dz = wrap_pi(y.z - p.z);
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (s_min) *s_min = s - kTwoPi * std::floor(s / kTwoPi);
    return std::min(dist, std::sqrt(best));
}

std::optional<Vec3> ChartMap::phi_inverse(const Vec3& y) const {
    if (identity_) {
        Vec3 x = y;
        x.z = wrap_pi(x.z);
        if (norm_horizontal(x) >= domain_radius_) return std::nullopt;
        return x;
    }
    double s;
    const double d = dist_to_curve(y, &s);
    if (d >= domain_radius_) return std::nullopt;
    Vec3 t, n, b;
    curve_->frame(s, t, n, b);
    Vec3 p = curve_->position(s);
    Vec3 dyv{y.x - p.x, y.y - p.y, wrap_pi(y.z - p.z)};
    Vec3 x{dot(dyv, n), dot(dyv, b), wrap_pi(s)};
    // Consistency: the residual along the tangent vanishes at a true
    // nearest point; reject if the polish failed.
    if (std::abs(dot(dyv, t)) > 1e-8 * (1.0 + d)) return std::nullopt;
    if (norm_horizontal(x) >= domain_radius_) return std::nullopt;
    return x;
}

double ChartMap::measure_injectivity(Rng& rng, int nsamples) const {
    // Find the largest rho <= nominal such that nearest-point projection
    // recovers random chart points at radius rho and det J stays positive.
    auto passes = [&](double rho) {
        Rng local(rng.next_u64());
        for (int i = 0; i < nsamples; ++i) {
            const double ang = local.uniform(0.0, kTwoPi);
            const double rr = rho * std::sqrt(local.uniform());
            const Vec3 x{rr * std::cos(ang), rr * std::sin(ang), local.uniform(0.0, kTwoPi)};
            Mat3 J;
            double D;
            jacobian(x, J, D);
            if (D <= 1e-6) return false;
            const Vec3 y = phi(x);
            double s;
            dist_to_curve(y, &s);
            Vec3 t, n, b;
            curve_->frame(s, t, n, b);
            Vec3 p = curve_->position(s);
            Vec3 dyv{y.x - p.x, y.y - p.y, wrap_pi(y.z - p.z)};
            Vec3 xr{dot(dyv, n), dot(dyv, b), s};
            const double dx1 = xr.x - x.x, dx2 = xr.y - x.y;
            const double dx3 = wrap_pi(xr.z - x.z);
            if (std::sqrt(dx1 * dx1 + dx2 * dx2 + dx3 * dx3) > 1e-6 * (1.0 + rho)) return false;
        }
        return true;
    };
    double lo = 0.0, hi = nominal_radius();
    if (passes(hi)) return hi;
    for (int it = 0; it < 24; ++it) {
        const double mid = 0.5 * (lo + hi);
        (passes(mid) ? lo : hi) = mid;
    }
    return lo;
}

Vec3 ChartMap::push_velocity_point(const VecFun& v, const Vec3& y, double support_radius) const {
    auto x = phi_inverse(y);
    if (!x || norm_horizontal(*x) >= support_radius) return {0, 0, 0};
    Mat3 J;
    double D;
    jacobian(*x, J, D);
    return J * v(*x);
}

Vec3 ChartMap::push_vorticity_point(const VecFun& eta, const Vec3& y, double support_radius) const {
    auto x = phi_inverse(y);
    if (!x || norm_horizontal(*x) >= support_radius) return {0, 0, 0};
    Mat3 J;
    double D;
    jacobian(*x, J, D);
    return (J * eta(*x)) / D;
}

Vec3 ChartMap::pull_velocity_point(const VecFun& u, const Vec3& x) const {
    if (norm_horizontal(x) >= domain_radius_)
        throw std::out_of_range("pull_velocity_point: outside chart domain");
    Mat3 J;
    double D;
    jacobian(x, J, D);
    return inverse(J) * u(phi(x));
}

Vec3 ChartMap::pull_vorticity_point(const VecFun& w, const Vec3& x) const {
    if (norm_horizontal(x) >= domain_radius_)
        throw std::out_of_range("pull_vorticity_point: outside chart domain");
    Mat3 J;
    double D;
    jacobian(x, J, D);
    return (inverse(J) * w(phi(x))) * D;
}

}  // namespace fns

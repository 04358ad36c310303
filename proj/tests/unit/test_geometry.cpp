#include <cmath>
#include <memory>

#include "doctest.h"
#include "fns/core/rng.hpp"
#include "fns/geometry/bump.hpp"
#include "fns/geometry/chart.hpp"
#include "fns/geometry/curve.hpp"
#include "fns/geometry/interp.hpp"
#include "test_helpers.hpp"

using namespace fns;

namespace {

std::shared_ptr<HelixCurve> helix() { return std::make_shared<HelixCurve>(); }

// Helix sampled through the generic trig-interpolated path.
std::shared_ptr<SampledCurve> sampled_helix(int n = 64) {
    std::vector<Vec3> pts(n);
    for (int i = 0; i < n; ++i) {
        const double s = kTwoPi * i / n;
        pts[i] = {std::cos(s), std::sin(s), s};
    }
    return std::make_shared<SampledCurve>(pts, "sampled-helix");
}

// Gently perturbed non-helical x3-periodic curve (reparameterized to
// constant speed on construction).
std::shared_ptr<SampledCurve> wavy_curve(int n = 128) {
    std::vector<Vec3> pts(n);
    for (int i = 0; i < n; ++i) {
        const double s = kTwoPi * i / n;
        pts[i] = {std::cos(s) + 0.12 * std::cos(2 * s), std::sin(s) - 0.08 * std::sin(3 * s),
                  s + 0.1 * std::sin(s)};
    }
    return std::make_shared<SampledCurve>(pts, "wavy");
}

// Random smooth tube-supported test field on the straight frame, with
// analytic derivatives: trig polynomial times a Gaussian envelope.
SmoothVec tube_field(Rng& rng, double width) {
    struct Term {
        double a1, a2, a3, p;
        Vec3 dir;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    for (int t = 0; t < 5; ++t) {
        Term tm;
        tm.a1 = rng.uniform(-2.0, 2.0);
        tm.a2 = rng.uniform(-2.0, 2.0);
        tm.a3 = rng.uniform_int(-2, 2);
        tm.p = rng.uniform(0.0, kTwoPi);
        tm.dir = {rng.normal(), rng.normal(), rng.normal()};
        terms->push_back(tm);
    }
    const double w2 = width * width;
    auto scalar = [terms, w2](const Vec3& x) {
        Vec3 acc{0, 0, 0};
        const double env = std::exp(-(x.x * x.x + x.y * x.y) / w2);
        for (const auto& t : *terms)
            acc += t.dir * (env * std::cos(t.a1 * x.x + t.a2 * x.y + t.a3 * x.z + t.p));
        return acc;
    };
    SmoothVec f;
    f.value = scalar;
    // Analytic first/second derivatives.
    auto d1 = [terms, w2](const Vec3& x, int a) {
        Vec3 acc{0, 0, 0};
        const double env = std::exp(-(x.x * x.x + x.y * x.y) / w2);
        for (const auto& t : *terms) {
            const double arg = t.a1 * x.x + t.a2 * x.y + t.a3 * x.z + t.p;
            const double k = a == 0 ? t.a1 : (a == 1 ? t.a2 : t.a3);
            double denv = 0.0;
            if (a == 0) denv = -2.0 * x.x / w2;
            if (a == 1) denv = -2.0 * x.y / w2;
            acc += t.dir * (env * (denv * std::cos(arg) - k * std::sin(arg)));
        }
        return acc;
    };
    f.deriv = d1;
    f.deriv2 = [terms, w2](const Vec3& x, int a, int b) {
        Vec3 acc{0, 0, 0};
        const double env = std::exp(-(x.x * x.x + x.y * x.y) / w2);
        for (const auto& t : *terms) {
            const double arg = t.a1 * x.x + t.a2 * x.y + t.a3 * x.z + t.p;
            const double ka = a == 0 ? t.a1 : (a == 1 ? t.a2 : t.a3);
            const double kb = b == 0 ? t.a1 : (b == 1 ? t.a2 : t.a3);
            double ea = 0.0, eb = 0.0, eab = 0.0;
            if (a == 0) ea = -2.0 * x.x / w2;
            if (a == 1) ea = -2.0 * x.y / w2;
            if (b == 0) eb = -2.0 * x.x / w2;
            if (b == 1) eb = -2.0 * x.y / w2;
            if (a == b && a != 2) eab = -2.0 / w2;
            const double c = std::cos(arg), s = std::sin(arg);
            // d_a d_b [env * cos(arg)]
            const double val = (eab + ea * eb) * env * c - env * (ea * kb + eb * ka) * s -
                               env * ka * kb * c;
            acc += t.dir * val;
        }
        return acc;
    };
    return f;
}

// Central second-order FD of a vector function of y.
template <class F>
Vec3 fd_partial(const F& f, const Vec3& y, int axis, double h) {
    Vec3 hp{0, 0, 0};
    hp[axis] = h;
    return (f(y + hp) - f(y - hp)) / (2.0 * h);
}

}  // namespace

TEST_CASE("helix frame matches the closed forms") {
    auto c = helix();
    CHECK(c->speed() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    Vec3 t, n, b;
    c->frame(0.0, t, n, b);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(t.x - 0.0) < 1e-12);
    CHECK(std::abs(t.y - r) < 1e-12);
    CHECK(std::abs(t.z - r) < 1e-12);
    CHECK(std::abs(n.x + 1.0) < 1e-12);
    CHECK(std::abs(n.y) < 1e-12);
    CHECK(std::abs(n.z) < 1e-12);
    for (double s : {0.0, 0.7, 2.9, 5.5}) {
        c->frame(s, t, n, b);
        Vec3 tc = HelixCurve::tangent_closed(s);
        Vec3 nc = HelixCurve::normal_closed(s);
        Vec3 bc = HelixCurve::binormal_closed(s);
        CHECK(norm(t - tc) < 1e-12);
        CHECK(norm(n - nc) < 1e-12);
        CHECK(norm(b - bc) < 1e-12);
    }
}

TEST_CASE("frames are orthonormal for generic curves") {
    for (auto curve : {std::static_pointer_cast<Curve>(sampled_helix()),
                       std::static_pointer_cast<Curve>(wavy_curve())}) {
        FrameData fd = build_frame(*curve, 256);
        CHECK(fd.max_gram_defect < 1e-10);
        CHECK(fd.max_speed_spread < 1e-8);
    }
}

TEST_CASE("vanishing curvature is rejected with the arc location") {
    // A curve with an inflection: x3-periodic perturbation whose curvature
    // crosses zero.
    const int n = 128;
    std::vector<Vec3> pts(n);
    for (int i = 0; i < n; ++i) {
        const double s = kTwoPi * i / n;
        pts[i] = {0.05 * std::sin(s), 0.0, s};
    }
    auto curve = std::make_shared<SampledCurve>(pts, "inflected");
    CHECK_THROWS_WITH_AS(build_frame(*curve, 64), doctest::Contains("vanishing curvature"),
                         std::runtime_error);
}

TEST_CASE("helix chart map and Jacobian closed forms") {
    ChartMap chart(helix(), 0.02);
    // Phi(x1,0,0) = (1-x1, 0, 0)
    for (double x1 : {-0.3, 0.1, 0.5}) {
        Vec3 y = chart.phi({x1, 0, 0});
        CHECK(std::abs(y.x - (1.0 - x1)) < 1e-13);
        CHECK(std::abs(y.y) < 1e-13);
        CHECK(std::abs(y.z) < 1e-13);
    }
    // centerline: Phi(0,0,s) = gamma(s)
    for (double s : {0.3, 1.9, 4.4}) {
        Vec3 y = chart.phi({0, 0, s});
        Vec3 g = chart.curve().position(s);
        CHECK(std::abs(y.x - g.x) < 1e-13);
        CHECK(std::abs(y.y - g.y) < 1e-13);
        CHECK(std::abs(wrap_pi(y.z - g.z)) < 1e-13);
    }
    // determinant (2 - x1)/sqrt(2) and det J = D
    Mat3 J;
    double D;
    chart.jacobian({0, 0, 1.2}, J, D);
    CHECK(D == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    chart.jacobian({1.0, 0, 0.4}, J, D);
    CHECK(D == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        Vec3 x{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(0.0, kTwoPi)};
        chart.jacobian(x, J, D);
        CHECK(std::abs(det(J) - D) < 1e-10);
    }
}

TEST_CASE("Jacobian agrees with finite differences of Phi at rate h^2") {
    for (auto curve : {std::static_pointer_cast<Curve>(helix()),
                       std::static_pointer_cast<Curve>(wavy_curve())}) {
        ChartMap chart(curve, 0.02);
        const Vec3 x{0.11, -0.07, 1.3};
        Mat3 J;
        double D;
        chart.jacobian(x, J, D);
        auto phi_unwrapped = [&](const Vec3& p) {
            // phi with continuous vertical output near x (avoid the wrap cut)
            Vec3 t, n, b;
            Vec3 d[1];
            curve->eval(p.z, 0, d);
            curve->frame(p.z, t, n, b);
            return d[0] + p.x * n + p.y * b;
        };
        double err_prev = 0.0;
        for (int k = 0; k < 2; ++k) {
            const double h = 0.02 / (1 << k);
            double err = 0.0;
            for (int a = 0; a < 3; ++a) {
                Vec3 col = fd_partial(phi_unwrapped, x, a, h);
                for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(col[i] - J[i][a]));
            }
            if (k == 1) {
                const double rate = std::log2(err_prev / err);
                CHECK(rate > 1.7);
                CHECK(rate < 2.5);
            }
            err_prev = err;
        }
    }
}

TEST_CASE("chart inverse: roundtrip and domain guard") {
    ChartMap chart(helix(), 0.02);
    Rng rng(77);
    for (int i = 0; i < 50; ++i) {
        const double rad = chart.domain_radius() * 0.8 * std::sqrt(rng.uniform());
        const double ang = rng.uniform(0.0, kTwoPi);
        Vec3 x{rad * std::cos(ang), rad * std::sin(ang), rng.uniform(0.0, kTwoPi)};
        Vec3 y = chart.phi(x);
        auto back = chart.phi_inverse(y);
        REQUIRE(back.has_value());
        CHECK(std::abs(back->x - x.x) < 1e-10);
        CHECK(std::abs(back->y - x.y) < 1e-10);
        CHECK(std::abs(wrap_pi(back->z - x.z)) < 1e-10);
    }
    // Far point: outside the usable tube.
    CHECK_FALSE(chart.phi_inverse({40.0, 0.0, 0.0}).has_value());
}

TEST_CASE("helix injectivity cap is near the focal radius") {
    ChartMap chart(helix(), 0.1);
    // 32 r = 3.2 exceeds what the helix geometry allows; the measured cap
    // must kick in around the focal distance 2 and above 1.
    CHECK(chart.domain_radius() < 2.05);
    CHECK(chart.domain_radius() > 1.0);
    MESSAGE("helix usable radius: ", chart.domain_radius(),
            " (largest fully compliant r = ", chart.domain_radius() / 32.0, ")");
}

TEST_CASE("dist_to_curve examples") {
    ChartMap chart(helix(), 0.05);
    CHECK(chart.dist_to_curve({0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-10));
    for (double s0 : {0.0, 1.1, 3.7}) {
        Vec3 p = chart.curve().position(s0);
        p.z = wrap_pi(p.z);
        CHECK(chart.dist_to_curve(p) < 1e-10);
    }
    // Brute-force parameter-scan oracle for y = (2,0,0): 1e6 samples of
    // sqrt((2-cos s)^2 + sin^2 s + wrap(s)^2) gives 1.0 at s = 0.
    double oracle = 1e300;
    for (int i = 0; i < 1000000; ++i) {
        const double s = -kPi + kTwoPi * i / 1000000.0;
        const double dx = 2.0 - std::cos(s), dy = -std::sin(s), dz = wrap_pi(-s);
        oracle = std::min(oracle, std::sqrt(dx * dx + dy * dy + dz * dz));
    }
    CHECK(oracle == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(chart.dist_to_curve({2, 0, 0}) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("bump profile") {
    const double l = 0.7;
    CHECK(bump(l, 0.5 * l) == 1.0);
    CHECK(bump(l, 2.5 * l) == 0.0);
    CHECK(bump(l, l) == 1.0);
    CHECK(bump(l, 2.0 * l) == 0.0);
    // monotone nonincreasing on [l, 2l], C1 continuity by finite differences
    double prev = 1.0;
    for (int i = 1; i <= 200; ++i) {
        const double rho = l + i * (l / 200.0);
        const double v = bump(l, rho);
        CHECK(v <= prev + 1e-15);
        prev = v;
        const double h = 1e-6;
        const double fd = (bump(l, rho + h) - bump(l, rho - h)) / (2 * h);
        CHECK(std::abs(fd - bump_drho(l, rho)) < 1e-6);
    }
    CHECK_THROWS(bump(0.0, 1.0));
}

TEST_CASE("lemma-2.2-style coefficient smallness") {
    for (auto curve : {std::static_pointer_cast<Curve>(helix()),
                       std::static_pointer_cast<Curve>(wavy_curve())}) {
        ChartMap chart(curve, 0.02);
        const double cs = chart.c_s();
        Rng rng(5);
        OperatorCoeffs oc0 = chart.coefficients({0, 0, 1.0});
        double Cfit = 0.0;
        for (int i = 0; i < 60; ++i) {
            const double rad = rng.uniform(1e-3, 0.6);
            const double ang = rng.uniform(0.0, kTwoPi);
            const Vec3 x{rad * std::cos(ang), rad * std::sin(ang), rng.uniform(0.0, kTwoPi)};
            ChartCoeffs cc = chart.coeffs(x);
            CHECK(std::abs(cc.D) > 0.1);  // |D| bounded below on the tube
            const double dD = std::abs(cc.D - cs);
            double dG = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) dG = std::max(dG, std::abs(cc.G[a][b] - cc.G0[a][b]));
            // second-order coefficients relative to their centerline values
            OperatorCoeffs oc = chart.coefficients(x);
            OperatorCoeffs oc_axis = chart.coefficients({0, 0, x.z});
            double dA = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int p = 0; p < 3; ++p)
                        for (int q = 0; q < 3; ++q)
                            dA = std::max(dA, std::abs(oc.A[a][b][p][q] - oc_axis.A[a][b][p][q]));
            Cfit = std::max(Cfit, std::max({dD, dG, dA}) / rad);
        }
        MESSAGE(curve->name(), ": fitted coefficient-slope constant C = ", Cfit);
        CHECK(Cfit < 50.0);
        CHECK(Cfit > 0.0);
        // centerline A matches the anisotropic baseline, independent of x3
        OperatorCoeffs oc1 = chart.coefficients({0, 0, 4.0});
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                        CHECK(std::abs(oc1.A[a][b][p][q] - oc0.A[a][b][p][q]) < 1e-9);
    }
}

TEST_CASE("identity chart: straight line gives plain operators") {
    auto line = std::make_shared<StraightLineCurve>();
    ChartMap chart(line, 2.0);
    CHECK(chart.is_identity());
    Vec3 y = chart.phi({0.3, -0.2, 1.1});
    CHECK(std::abs(y.x - 0.3) < 1e-15);
    CHECK(std::abs(y.y + 0.2) < 1e-15);
    OperatorCoeffs oc = chart.coefficients({0.4, 0.1, 2.0});
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                worst = std::max(worst, std::abs(oc.E[a][p][q]));
                worst = std::max(worst, std::abs(oc.B[a][p][q]));
                for (int b = 0; b < 3; ++b) worst = std::max(worst, std::abs(oc.A[a][b][p][q]));
            }
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            worst = std::max(worst, std::abs(oc.F[p][q]));
            worst = std::max(worst, std::abs(oc.C[p][q]));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("pull after push is the identity on tube fields") {
    ChartMap chart(helix(), 0.05);
    Rng rng(31);
    SmoothVec eta = tube_field(rng, 0.6);
    auto pushed = [&](const Vec3& y) {
        return chart.push_vorticity_point([&](const Vec3& x) { return eta.value(x); }, y, 1.2);
    };
    for (int i = 0; i < 20; ++i) {
        const double rad = 0.5 * std::sqrt(rng.uniform());
        const double ang = rng.uniform(0.0, kTwoPi);
        Vec3 x{rad * std::cos(ang), rad * std::sin(ang), rng.uniform(0.0, kTwoPi)};
        Vec3 back = chart.pull_vorticity_point(pushed, x);
        CHECK(norm(back - eta.value(x)) < 1e-8);
    }
}

TEST_CASE("Q maps the vertical unit to the unit tangent on the centerline") {
    ChartMap chart(helix(), 0.05);
    for (double s : {0.0, 1.3, 5.1}) {
        Vec3 y = chart.phi({0, 0, s});
        Vec3 w = chart.push_vorticity_point([](const Vec3&) { return Vec3{0, 0, 1}; }, y, 1.0);
        Vec3 t = HelixCurve::tangent_closed(s);
        CHECK(norm(w - t) < 1e-10);
    }
}

TEST_CASE("transported operator identities hold at second order in h") {
    // curl identity: curl_y(Q eta) = Q(curl_Phi eta); Laplacian likewise;
    // divergence identity; bilinear identity. Outer derivatives by central
    // differences, everything inside exact.
    for (auto curve : {std::static_pointer_cast<Curve>(helix()),
                       std::static_pointer_cast<Curve>(sampled_helix()),
                       std::static_pointer_cast<Curve>(wavy_curve())}) {
        ChartMap chart(curve, 0.05);
        Rng rng(101);
        SmoothVec eta = tube_field(rng, 0.5);
        SmoothVec vel = tube_field(rng, 0.5);
        const double support = 1.0;

        auto Qeta = [&](const Vec3& y) {
            return chart.push_vorticity_point([&](const Vec3& x) { return eta.value(x); }, y,
                                              support);
        };
        auto Pvel = [&](const Vec3& y) {
            return chart.push_velocity_point([&](const Vec3& x) { return vel.value(x); }, y,
                                             support);
        };

        const Vec3 x0{0.21, -0.13, 0.9};
        const Vec3 y0 = chart.phi(x0);

        // curl
        {
            Vec3 rhs = chart.push_vorticity_point(
                [&](const Vec3& x) { return chart.modified_curl(eta, x); }, y0, support);
            double prev = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double h = 0.04 / (1 << k);
                Vec3 lhs{0, 0, 0};
                Vec3 d0 = fd_partial(Qeta, y0, 0, h);
                Vec3 d1 = fd_partial(Qeta, y0, 1, h);
                Vec3 d2 = fd_partial(Qeta, y0, 2, h);
                lhs = {d1.z - d2.y, d2.x - d0.z, d0.y - d1.x};
                const double err = norm(lhs - rhs);
                if (k > 0) {
                    const double rate = std::log2(prev / err);
                    CHECK(rate > 1.7);
                    CHECK(rate < 2.3);
                }
                prev = err;
            }
        }
        // divergence: div(Q eta)(y) = (D^{-1} div eta)(x)
        {
            ChartCoeffs cc = chart.coeffs(x0);
            Vec3 de0 = eta.deriv(x0, 0), de1 = eta.deriv(x0, 1), de2 = eta.deriv(x0, 2);
            const double rhs = (de0.x + de1.y + de2.z) / cc.D;
            double prev = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double h = 0.04 / (1 << k);
                const double lhs = fd_partial(Qeta, y0, 0, h).x + fd_partial(Qeta, y0, 1, h).y +
                                   fd_partial(Qeta, y0, 2, h).z;
                const double err = std::abs(lhs - rhs);
                if (k > 0) CHECK(std::log2(prev / err) > 1.7);
                prev = err;
            }
        }
        // Laplacian
        {
            Vec3 rhs = chart.push_vorticity_point(
                [&](const Vec3& x) { return chart.modified_laplacian(eta, x); }, y0, support);
            double prev = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double h = 0.05 / (1 << k);
                Vec3 lhs{0, 0, 0};
                for (int a = 0; a < 3; ++a) {
                    Vec3 hp{0, 0, 0};
                    hp[a] = h;
                    lhs += (Qeta(y0 + hp) - 2.0 * Qeta(y0) + Qeta(y0 - hp)) * (1.0 / (h * h));
                }
                const double err = norm(lhs - rhs);
                if (k > 0) {
                    const double rate = std::log2(prev / err);
                    CHECK(rate > 1.7);
                    CHECK(rate < 2.3);
                }
                prev = err;
            }
        }
        // bilinear: B[Pv, Q eta] = Q B[v, eta], B[f,g] = div(f (x) g - g (x) f)
        {
            auto Bstraight = [&](const Vec3& x) {
                // analytic B[v,eta] from derivatives
                Vec3 out{0, 0, 0};
                const Vec3 vv = vel.value(x), ee = eta.value(x);
                for (int i = 0; i < 3; ++i) {
                    double s = 0;
                    for (int j = 0; j < 3; ++j) {
                        const Vec3 dvj = vel.deriv(x, j), dej = eta.deriv(x, j);
                        s += dvj[i] * ee[j] + vv[i] * dej[j] - dej[i] * vv[j] - ee[i] * dvj[j];
                    }
                    out[i] = s;
                }
                return out;
            };
            Vec3 rhs = chart.push_vorticity_point(Bstraight, y0, support);
            auto tensor = [&](const Vec3& y) {
                const Vec3 f = Pvel(y), g = Qeta(y);
                Mat3 T;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) T[i][j] = f[i] * g[j] - g[i] * f[j];
                return T;
            };
            double prev = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double h = 0.04 / (1 << k);
                Vec3 lhs{0, 0, 0};
                for (int j = 0; j < 3; ++j) {
                    Vec3 hp{0, 0, 0};
                    hp[j] = h;
                    Mat3 Tp = tensor(y0 + hp), Tm = tensor(y0 - hp);
                    for (int i = 0; i < 3; ++i) lhs[i] += (Tp[i][j] - Tm[i][j]) / (2.0 * h);
                }
                const double err = norm(lhs - rhs);
                if (k > 0) CHECK(std::log2(prev / err) > 1.6);
                prev = err;
            }
        }
    }
}

TEST_CASE("distance equivalence through the chart") {
    // |Phi(x) - Phi(x')| comparable to |x~ - x~'| + |x3 - x3'| over sampled
    // pairs in the tube.
    for (auto curve : {std::static_pointer_cast<Curve>(helix()),
                       std::static_pointer_cast<Curve>(wavy_curve())}) {
        ChartMap chart(curve, 0.02);
        Rng rng(17);
        double cmin = 1e300, cmax = 0.0;
        for (int i = 0; i < 300; ++i) {
            auto draw = [&] {
                const double rad = 0.6 * std::sqrt(rng.uniform());
                const double ang = rng.uniform(0.0, kTwoPi);
                return Vec3{rad * std::cos(ang), rad * std::sin(ang), rng.uniform(0.0, kTwoPi)};
            };
            Vec3 a = draw(), b = draw();
            Vec3 ya = chart.phi(a), yb = chart.phi(b);
            const double dy = std::sqrt(std::pow(ya.x - yb.x, 2) + std::pow(ya.y - yb.y, 2) +
                                        std::pow(wrap_pi(ya.z - yb.z), 2));
            const double dx = std::hypot(a.x - b.x, a.y - b.y) + std::abs(wrap_pi(a.z - b.z));
            if (dx < 1e-9) continue;
            cmin = std::min(cmin, dy / dx);
            cmax = std::max(cmax, dy / dx);
        }
        MESSAGE(curve->name(), ": distance-equivalence ratio range [", cmin, ", ", cmax, "]");
        CHECK(cmin > 0.05);
        CHECK(cmax < 20.0);
    }
}

TEST_CASE("sampled-helix chart cross-validates the closed-form one") {
    ChartMap a(helix(), 0.05), b(sampled_helix(), 0.05);
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        Vec3 x{rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4), rng.uniform(0.0, kTwoPi)};
        Vec3 ya = a.phi(x), yb = b.phi(x);
        CHECK(norm(ya - yb) < 1e-9);
        Mat3 Ja, Jb;
        double Da, Db;
        a.jacobian(x, Ja, Da);
        b.jacobian(x, Jb, Db);
        CHECK(std::abs(Da - Db) < 1e-9);
        OperatorCoeffs ca = a.coefficients(x), cb = b.coefficients(x);
        double worst = 0.0;
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                worst = std::max(worst, std::abs(ca.F[p][q] - cb.F[p][q]));
                for (int u = 0; u < 3; ++u) {
                    worst = std::max(worst, std::abs(ca.E[u][p][q] - cb.E[u][p][q]));
                    worst = std::max(worst, std::abs(ca.B[u][p][q] - cb.B[u][p][q]));
                    for (int v = 0; v < 3; ++v)
                        worst = std::max(worst, std::abs(ca.A[u][v][p][q] - cb.A[u][v][p][q]));
                }
            }
        CHECK(worst < 1e-7);
    }
}

TEST_CASE("quintic spline interpolation reproduces smooth fields") {
    GridSpec g;
    g.L = 4.0;
    g.n1 = g.n2 = 64;
    g.n3 = 16;
    Rng rng(9);
    test::RandomTrig f(rng, g, 3, 2, 6);
    Field fld = Field::scalar(g);
    fld.fill([&](double x, double y, double z) { return f(x, y, z); });
    SplineInterpolant interp(fld);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        Vec3 p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-kPi, kPi)};
        worst = std::max(worst, std::abs(interp.eval(0, p) - f(p.x, p.y, p.z)));
    }
    MESSAGE("spline interpolation max error: ", worst);
    CHECK(worst < 2e-4);
    // order check: doubling the grid gains about 2^6
    GridSpec g2 = g;
    g2.n1 = g2.n2 = 128;
    g2.n3 = 32;
    Field fld2 = Field::scalar(g2);
    fld2.fill([&](double x, double y, double z) { return f(x, y, z); });
    SplineInterpolant interp2(fld2);
    double worst2 = 0.0;
    for (int i = 0; i < 200; ++i) {
        Vec3 p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-kPi, kPi)};
        worst2 = std::max(worst2, std::abs(interp2.eval(0, p) - f(p.x, p.y, p.z)));
    }
    MESSAGE("spline interpolation max error at 2x: ", worst2);
    CHECK(worst2 < worst / 24.0);
}

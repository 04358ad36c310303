#pragma once

// Forward-mode differentiation helpers.
//
// SJet: scalar function of the curve parameter with derivatives to order 3
// (enough for second derivatives of the chart coefficient tensors).
// Jet2: scalar function of x = (x1,x2,x3) carrying value, gradient and
// symmetric Hessian. Frame functions enter as Jet2 seeded from SJets.

#include <array>
#include <cmath>

#include "fns/geometry/vec3.hpp"

namespace fns {

struct SJet {
    // d[j] = j-th derivative, j = 0..3
    std::array<double, 4> d{0, 0, 0, 0};

    static SJet constant(double v) { return {{v, 0, 0, 0}}; }

    SJet operator+(const SJet& o) const {
        return {{d[0] + o.d[0], d[1] + o.d[1], d[2] + o.d[2], d[3] + o.d[3]}};
    }
    SJet operator-(const SJet& o) const {
        return {{d[0] - o.d[0], d[1] - o.d[1], d[2] - o.d[2], d[3] - o.d[3]}};
    }
    SJet operator*(const SJet& o) const {
        // Leibniz to order 3.
        return {{d[0] * o.d[0],
                 d[1] * o.d[0] + d[0] * o.d[1],
                 d[2] * o.d[0] + 2 * d[1] * o.d[1] + d[0] * o.d[2],
                 d[3] * o.d[0] + 3 * d[2] * o.d[1] + 3 * d[1] * o.d[2] + d[0] * o.d[3]}};
    }
    SJet operator*(double a) const { return {{a * d[0], a * d[1], a * d[2], a * d[3]}}; }
    SJet operator/(const SJet& o) const {
        // q = p/r: successively solve p = q r.
        SJet q;
        q.d[0] = d[0] / o.d[0];
        q.d[1] = (d[1] - q.d[0] * o.d[1]) / o.d[0];
        q.d[2] = (d[2] - q.d[0] * o.d[2] - 2 * q.d[1] * o.d[1]) / o.d[0];
        q.d[3] = (d[3] - q.d[0] * o.d[3] - 3 * q.d[1] * o.d[2] - 3 * q.d[2] * o.d[1]) / o.d[0];
        return q;
    }
};

inline SJet sqrt(const SJet& a) {
    SJet r;
    r.d[0] = std::sqrt(a.d[0]);
    r.d[1] = a.d[1] / (2 * r.d[0]);
    r.d[2] = (a.d[2] - 2 * r.d[1] * r.d[1]) / (2 * r.d[0]);
    r.d[3] = (a.d[3] - 6 * r.d[1] * r.d[2]) / (2 * r.d[0]);
    return r;
}

struct SJet3 {
    SJet x, y, z;
    SJet3 operator+(const SJet3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    SJet3 operator-(const SJet3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    SJet3 operator*(const SJet& a) const { return {x * a, y * a, z * a}; }
    SJet3 operator*(double a) const { return {x * a, y * a, z * a}; }
    // Shift down: the jet of the derivative function (order drops by one).
    SJet3 derivative() const {
        auto sh = [](const SJet& j) { return SJet{{j.d[1], j.d[2], j.d[3], 0.0}}; };
        return {sh(x), sh(y), sh(z)};
    }
    Vec3 value() const { return {x.d[0], y.d[0], z.d[0]}; }
    Vec3 deriv1() const { return {x.d[1], y.d[1], z.d[1]}; }
};

inline SJet dot(const SJet3& a, const SJet3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline SJet3 cross(const SJet3& a, const SJet3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// --- 3D second-order jets -------------------------------------------------

struct Jet2 {
    double v = 0;                            // value
    std::array<double, 3> g{0, 0, 0};        // gradient
    std::array<double, 6> h{0, 0, 0, 0, 0, 0};  // hessian: 11,22,33,12,13,23

    static int hidx(int a, int b) {
        if (a == b) return a;
        const int lo = a < b ? a : b, hi = a < b ? b : a;
        if (lo == 0 && hi == 1) return 3;
        if (lo == 0 && hi == 2) return 4;
        return 5;
    }
    double hess(int a, int b) const { return h[hidx(a, b)]; }

    static Jet2 constant(double c) { return {c, {0, 0, 0}, {0, 0, 0, 0, 0, 0}}; }
    static Jet2 coordinate(double value, int axis) {
        Jet2 j = constant(value);
        j.g[axis] = 1.0;
        return j;
    }
    // Function of x3 alone with given first/second s-derivatives.
    static Jet2 of_x3(double f, double fp, double fpp) {
        Jet2 j = constant(f);
        j.g[2] = fp;
        j.h[2] = fpp;
        return j;
    }

    Jet2 operator+(const Jet2& o) const {
        Jet2 r;
        r.v = v + o.v;
        for (int i = 0; i < 3; ++i) r.g[i] = g[i] + o.g[i];
        for (int i = 0; i < 6; ++i) r.h[i] = h[i] + o.h[i];
        return r;
    }
    Jet2 operator-(const Jet2& o) const {
        Jet2 r;
        r.v = v - o.v;
        for (int i = 0; i < 3; ++i) r.g[i] = g[i] - o.g[i];
        for (int i = 0; i < 6; ++i) r.h[i] = h[i] - o.h[i];
        return r;
    }
    Jet2 operator*(const Jet2& o) const {
        Jet2 r;
        r.v = v * o.v;
        for (int i = 0; i < 3; ++i) r.g[i] = g[i] * o.v + v * o.g[i];
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b)
                r.h[hidx(a, b)] = hess(a, b) * o.v + g[a] * o.g[b] + g[b] * o.g[a] + v * o.hess(a, b);
        return r;
    }
    Jet2 operator*(double a) const {
        Jet2 r;
        r.v = a * v;
        for (int i = 0; i < 3; ++i) r.g[i] = a * g[i];
        for (int i = 0; i < 6; ++i) r.h[i] = a * h[i];
        return r;
    }
    Jet2 operator/(const Jet2& o) const { return *this * o.reciprocal(); }

    Jet2 reciprocal() const {
        Jet2 r;
        const double iv = 1.0 / v;
        r.v = iv;
        for (int i = 0; i < 3; ++i) r.g[i] = -g[i] * iv * iv;
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b)
                r.h[hidx(a, b)] = (2.0 * g[a] * g[b] * iv - hess(a, b)) * iv * iv;
        return r;
    }
};

struct Jet2Vec {
    Jet2 c[3];
    Jet2& operator[](int i) { return c[i]; }
    const Jet2& operator[](int i) const { return c[i]; }
};

struct Jet2Mat {
    Jet2 m[3][3];
    Jet2* operator[](int i) { return m[i]; }
    const Jet2* operator[](int i) const { return m[i]; }

    Mat3 value() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] = m[i][j].v;
        return r;
    }
};

inline Jet2 jet_det(const Jet2Mat& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline Jet2Mat jet_mat_mul_t(const Jet2Mat& a) {  // a^T a
    Jet2Mat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Jet2 s = Jet2::constant(0.0);
            for (int k = 0; k < 3; ++k) s = s + a[k][i] * a[k][j];
            r[i][j] = s;
        }
    return r;
}

inline Jet2Mat jet_inverse(const Jet2Mat& a) {
    const Jet2 d = jet_det(a);
    Jet2Mat r;
    auto cof = [&](int i, int j) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        return a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = cof(j, i) / d;
    return r;
}

}  // namespace fns

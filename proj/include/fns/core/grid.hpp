#pragma once

// Sampling grid for the domain R^2 x T: a truncated box [-L,L)^2 in (x1,x2),
// the full 2*pi period in x3. Power-of-two point counts per axis.

#include <cmath>
#include <stdexcept>
#include <string>

namespace fns {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct GridSpec {
    double L = 8.0;  // half width of the horizontal box
    int n1 = 128;
    int n2 = 128;
    int n3 = 16;
    double dealias_fraction = 2.0 / 3.0;

    static bool power_of_two(int n) { return n >= 8 && (n & (n - 1)) == 0; }

    void validate() const {
        if (!(L > 0.0)) throw std::invalid_argument("GridSpec: L must be positive");
        if (!power_of_two(n1) || !power_of_two(n2) || !power_of_two(n3))
            throw std::invalid_argument("GridSpec: n1,n2,n3 must be powers of two >= 8");
        if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
            throw std::invalid_argument("GridSpec: dealias_fraction must be in (0,1]");
    }

    std::size_t points() const { return std::size_t(n1) * n2 * n3; }

    double dx1() const { return 2.0 * L / n1; }
    double dx2() const { return 2.0 * L / n2; }
    double dx3() const { return kTwoPi / n3; }
    double cell_volume() const { return dx1() * dx2() * dx3(); }

    double x1(int i) const { return -L + i * dx1(); }
    double x2(int i) const { return -L + i * dx2(); }
    double x3(int i) const { return -kPi + i * dx3(); }

    // Signed spectral index for storage index m in [0,n): 0,1,..,n/2-1,-n/2,..,-1
    static int signed_index(int m, int n) { return m < n / 2 ? m : m - n; }

    // Physical wavenumbers. Horizontal period 2L, vertical period 2*pi.
    double k1(int m) const { return (kPi / L) * signed_index(m, n1); }
    double k2(int m) const { return (kPi / L) * signed_index(m, n2); }
    double k3(int m) const { return double(signed_index(m, n3)); }

    // Dealiasing keeps |m| <= dealias_fraction * n/2 per axis, with an
    // elliptical (isotropic when n1 == n2) cut in the horizontal plane.
    bool mode_kept(int m1, int m2, int m3) const {
        const double a1 = signed_index(m1, n1) / (dealias_fraction * n1 / 2.0);
        const double a2 = signed_index(m2, n2) / (dealias_fraction * n2 / 2.0);
        const double a3 = std::abs(signed_index(m3, n3)) / (dealias_fraction * n3 / 2.0);
        return a1 * a1 + a2 * a2 <= 1.0 + 1e-12 && a3 <= 1.0 + 1e-12;
    }

    bool same_shape(const GridSpec& o) const {
        return n1 == o.n1 && n2 == o.n2 && n3 == o.n3 && L == o.L;
    }

    std::size_t index(int i3, int i2, int i1) const {
        return (std::size_t(i3) * n2 + i2) * n1 + i1;
    }
};

}  // namespace fns

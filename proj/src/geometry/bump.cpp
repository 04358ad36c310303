#include "fns/geometry/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace fns {

namespace {

inline double phi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double dphi(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

}  // namespace

double bump(double l, double rho) {
    if (!(l > 0.0)) throw std::invalid_argument("bump: l must be positive");
    const double tau = (rho - l) / l;
    if (tau <= 0.0) return 1.0;
    if (tau >= 1.0) return 0.0;
    const double a = phi(1.0 - tau), b = phi(tau);
    return a / (a + b);
}

double bump_drho(double l, double rho) {
    if (!(l > 0.0)) throw std::invalid_argument("bump: l must be positive");
    const double tau = (rho - l) / l;
    if (tau <= 0.0 || tau >= 1.0) return 0.0;
    const double a = phi(1.0 - tau), b = phi(tau);
    const double da = -dphi(1.0 - tau), db = dphi(tau);
    const double g = (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
    return g / l;
}

}  // namespace fns

#pragma once

// Radial cutoff chi_l: identically 1 for rho <= l, 0 for rho >= 2l, with the
// exp(-1/t) mollifier ramp in between (smooth, monotone).

namespace fns {

double bump(double l, double rho);
double bump_drho(double l, double rho);  // d chi_l / d rho

}  // namespace fns

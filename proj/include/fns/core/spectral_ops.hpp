#pragma once

// Exact spectral differential operators on the resolved band, plus the
// Fourier-multiplier utilities the evolution and norms are built from.

#include <array>

#include "fns/core/field.hpp"

namespace fns {

// d^{a1+a2+a3} f / dx1^a1 dx2^a2 dx3^a3, |a| <= 4.
SpectralField diff(const SpectralField& f, std::array<int, 3> multiindex);
Field diff(const Field& f, std::array<int, 3> multiindex);

SpectralField laplacian(const SpectralField& f);
Field laplacian(const Field& f);

SpectralField divergence(const SpectralField& v);  // 3 -> 1 comp
Field divergence(const Field& v);

SpectralField curl(const SpectralField& v);  // 3 -> 3 comp
Field curl(const Field& v);

SpectralField gradient(const SpectralField& f);  // 1 -> 3 comp

// Multiplier (1 + t|k|^2)^{beta/2}; beta in [0,1), t > 0.
SpectralField fractional_bracket(const SpectralField& f, double beta, double t);
Field fractional_bracket(const Field& f, double beta, double t);

// Heat semigroup e^{t Laplacian} (exact integrating factor), t >= 0.
void heat_multiply(SpectralField& f, double t);
Field heat_apply(const Field& f, double t);

// Zero all modes outside the dealias band.
void dealias(SpectralField& f);

// Leray-type projection of a 3-component spectral field onto divergence-free
// part: v_hat -= k (k . v_hat)/|k|^2 (k = 0 mode untouched).
void project_divfree(SpectralField& v);

// || div v ||_L2 / || grad v ||_L2 (relative divergence of a vector field).
double relative_divergence(const SpectralField& v);

// sum_x |f|^2 computed two ways for the declared Parseval relation:
// physical sum and n3 * sum_k |c_k|^2.
double parseval_physical(const Field& f);
double parseval_spectral(const SpectralField& f);

}  // namespace fns

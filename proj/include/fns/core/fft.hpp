#pragma once

// FFTW-backed transforms between physical and spectral representations.
//
// Convention: in x3 the coefficient is (1/2pi) * integral of f e^{-i zeta x3},
// i.e. (1/n3) * DFT; in (x1,x2) the discrete transform is unitary
// (1/sqrt(n1 n2) each way). Coefficients are true coefficients with respect
// to the centered coordinates: f(x) = sum_k c_k e^{i k.x} with x1,x2 in
// [-L,L) and x3 in [-pi,pi), so Parseval reads sum_x |f|^2 = n3 sum_k |c|^2.

#include "fns/core/field.hpp"

namespace fns {

SpectralField to_spectral(const Field& f);
Field from_spectral(const SpectralField& F);

// 1D transforms along x3 only: physical (x1,x2,x3) <-> mixed (x1,x2;zeta)
// slabs, same normalization as above ((1/n3)*DFT forward). The mixed buffer
// has the slab for zeta-index m3 at offset m3*n1*n2.
void fft_x3_forward(const Field& f, int c, cplx* out);
void fft_x3_inverse(const cplx* in, Field& f, int c);

// In-place unnormalized 2D complex DFT on an n2 x n1 row-major slab.
void fft2_forward(cplx* slab, int n2, int n1);
void fft2_inverse(cplx* slab, int n2, int n1);

// In-place unnormalized 1D complex DFT on contiguous data.
void fft1_forward(cplx* row, int n);
void fft1_inverse(cplx* row, int n);

}  // namespace fns

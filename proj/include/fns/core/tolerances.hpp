#pragma once

// Central table of numeric tolerances and guard thresholds. Everything that
// gates behavior at runtime lives here; tests pin their own expectations.

namespace fns::tol {

inline constexpr double roundtrip_rel = 1e-12;        // transform roundtrip
inline constexpr double hermitian_abs = 1e-12;        // conj symmetry of spectra
inline constexpr double newton_point = 1e-12;         // chart inversion step tol
inline constexpr int newton_max_iter = 50;            // chart inversion iterations
inline constexpr double frame_orthonormal = 1e-10;    // Gram defect of frames
inline constexpr double constant_speed_rel = 1e-10;   // |gamma'| spread
inline constexpr double divfree_guard_default = 1e-6; // solver input guard (relative)
inline constexpr double boundary_mass_guard = 1e-4;   // solver truncation guard
inline constexpr double bs_input_divfree = 1e-6;      // biot_savart_apply precondition
inline constexpr double bs_input_boundary = 1e-8;     // relative boundary mass of omega
inline constexpr double helical_pre_defect = 1e-6;    // corrector/interp preconditions
inline constexpr double zero_slice_skip = 1e-300;     // skip empty zeta slices (abs^2)

}  // namespace fns::tol

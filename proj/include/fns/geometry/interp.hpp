#pragma once

// Quintic B-spline interpolation of periodic grid fields: exact-FFT
// prefilter, then local 6x6x6 tensor-product evaluation. Used to sample
// grid fields at mapped points in the chart push-forwards and the group
// averaging.

#include <vector>

#include "fns/core/field.hpp"
#include "fns/geometry/vec3.hpp"

namespace fns {

class SplineInterpolant {
  public:
    explicit SplineInterpolant(const Field& f);

    int components() const { return ncomp_; }
    const GridSpec& grid() const { return grid_; }

    double eval(int c, const Vec3& p) const;
    Vec3 eval_vec(const Vec3& p) const;

  private:
    GridSpec grid_;
    int ncomp_ = 1;
    std::vector<double> coeff_;  // prefiltered B-spline coefficients
};

// Quintic cardinal B-spline, support (-3,3).
double bspline5(double t);

}  // namespace fns

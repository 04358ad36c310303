#pragma once

// Tubular chart around a curve: the straightening map
// Phi(x) = gamma(x3) + x1 n(x3) + x2 b(x3), its inverse, Jacobian and
// determinant, the transported-operator coefficient tensors, and the
// velocity/vorticity push-forwards.
//
// The nominal tube is |x~| < 32 r; the usable evaluation radius is the
// smaller of that and the measured injectivity cap (reported, never
// exceeded silently).

#include <functional>
#include <memory>
#include <optional>

#include "fns/core/rng.hpp"
#include "fns/geometry/curve.hpp"
#include "fns/geometry/jets.hpp"

namespace fns {

using VecFun = std::function<Vec3(const Vec3&)>;

// Smooth vector field with analytic derivatives, used by the transported
// operators and the coefficient probes.
struct SmoothVec {
    std::function<Vec3(const Vec3&)> value;
    std::function<Vec3(const Vec3&, int)> deriv;          // d/dx_a
    std::function<Vec3(const Vec3&, int, int)> deriv2;    // d2/dx_a dx_b
};

// Straight filament: the vertical axis with the fixed frame (e1,e2,e3);
// its chart is the identity in the tube.
class StraightLineCurve final : public Curve {
  public:
    StraightLineCurve() { c_s_ = 1.0; }
    void eval(double s, int order, Vec3* out) const override {
        for (int j = 0; j <= order; ++j) out[j] = {0, 0, j == 0 ? s : (j == 1 ? 1.0 : 0.0)};
    }
    std::string name() const override { return "straight"; }
};

struct ChartCoeffs {
    Mat3 J;
    double D = 0;   // det J
    Mat3 G;         // D^{-1} J^T J
    Mat3 M;         // (J^T J)^{-1}
    Mat3 G0;        // centerline G = diag(1/c_s, 1/c_s, c_s)
};

// Coefficient tensors of the transported operators at a point, in the form
// curl_Phi = curl + E^j d_j + F and Lap_Phi = Lap + A^{ab} d_a d_b + B^a d_a + C.
struct OperatorCoeffs {
    Mat3 E[3];
    Mat3 F;
    Mat3 A[3][3];  // symmetric in (a,b)
    Mat3 B[3];
    Mat3 C;
};

class ChartMap {
  public:
    ChartMap(std::shared_ptr<const Curve> curve, double r);

    const Curve& curve() const { return *curve_; }
    double r() const { return r_; }
    double c_s() const { return curve_->speed(); }
    // Nominal tube radius 32 r.
    double nominal_radius() const { return 32.0 * r_; }
    // Usable radius: min(32 r, measured injectivity cap). Evaluations
    // beyond it throw.
    double domain_radius() const { return domain_radius_; }
    bool is_identity() const { return identity_; }

    Vec3 phi(const Vec3& x) const;  // third output component wrapped to T

    // Inverse through nearest-point projection with Newton-polished
    // parameter; empty if y is farther than the usable radius or the
    // iteration fails.
    std::optional<Vec3> phi_inverse(const Vec3& y) const;

    void jacobian(const Vec3& x, Mat3& J, double& D) const;
    ChartCoeffs coeffs(const Vec3& x) const;

    // Full jets of J, D, G, M at x (exact via forward-mode differentiation).
    void coeff_jets(const Vec3& x, Jet2Mat& J, Jet2& D, Jet2Mat& G, Jet2Mat& M) const;

    // Transported operators applied pointwise to an analytic field.
    Vec3 modified_curl(const SmoothVec& eta, const Vec3& x) const;
    Vec3 modified_laplacian(const SmoothVec& eta, const Vec3& x) const;

    // Coefficient tensors extracted by polynomial probes of the exact
    // operators.
    OperatorCoeffs coefficients(const Vec3& x) const;

    // Distance from y to the curve (T-metric in the vertical component),
    // Newton-polished; also returns the minimizing parameter if asked.
    double dist_to_curve(const Vec3& y, double* s_min = nullptr) const;

    // Largest tube radius passing the nearest-point invertibility sampling,
    // capped at the nominal radius. Measured once at construction.
    double measured_injectivity_radius() const { return injectivity_radius_; }

    // Push-forwards of analytic fields, evaluated by exact composition.
    // Velocities: P v (y) = J v(Phi^{-1} y). Vorticities: Q eta (y) =
    // D^{-1} J eta(Phi^{-1} y). Zero outside the support radius.
    Vec3 push_velocity_point(const VecFun& v, const Vec3& y, double support_radius) const;
    Vec3 push_vorticity_point(const VecFun& eta, const Vec3& y, double support_radius) const;
    // Pull-backs: P^{-1} u (x) = J^{-1} u(Phi x), Q^{-1} w (x) = D J^{-1} w(Phi x).
    Vec3 pull_velocity_point(const VecFun& u, const Vec3& x) const;
    Vec3 pull_vorticity_point(const VecFun& w, const Vec3& x) const;

  private:
    double measure_injectivity(Rng& rng, int nsamples) const;

    std::shared_ptr<const Curve> curve_;
    double r_ = 0;
    bool identity_ = false;
    double injectivity_radius_ = 0;
    double domain_radius_ = 0;
    // dense table of curve positions for nearest-point seeding
    std::vector<Vec3> table_;
};

}  // namespace fns

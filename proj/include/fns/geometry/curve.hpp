#pragma once

// Periodic curves in R^2 x T with x3-periodic structure
// gamma(s + 2pi) = gamma(s) + (0,0,2pi), constant-speed parameterization,
// and the canonical (Frenet-type) orthonormal frame with parameter jets.

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "fns/geometry/jets.hpp"
#include "fns/geometry/vec3.hpp"

namespace fns {

class Curve {
  public:
    virtual ~Curve() = default;

    // out[j] = d^j gamma / ds^j for j = 0..order (order <= 5). The third
    // component is returned unwrapped (gamma3(s+2pi) = gamma3(s) + 2pi).
    virtual void eval(double s, int order, Vec3* out) const = 0;
    virtual std::string name() const = 0;

    double speed() const { return c_s_; }

    Vec3 position(double s) const {
        Vec3 d[1];
        eval(s, 0, d);
        return d[0];
    }

    // Frame jets to parameter order 3 (enough for second derivatives of the
    // chart coefficients). Throws if the curvature vanishes at s.
    void frame_jets(double s, SJet3& t, SJet3& n, SJet3& b) const;

    // Frame values and first derivatives only.
    void frame(double s, Vec3& t, Vec3& n, Vec3& b) const;

    double curvature(double s) const;

  protected:
    double c_s_ = 0.0;  // set by concrete types
};

class HelixCurve final : public Curve {
  public:
    HelixCurve();
    void eval(double s, int order, Vec3* out) const override;
    std::string name() const override { return "helix"; }

    // Closed-form frame from the standard parameterization, used to
    // cross-validate the generic path.
    static Vec3 tangent_closed(double s);
    static Vec3 normal_closed(double s);
    static Vec3 binormal_closed(double s);
};

// Curve from equispaced samples of one period, trigonometrically
// interpolated; reparameterized to constant speed on construction.
class SampledCurve final : public Curve {
  public:
    // samples[i] = gamma(s_i) at s_i = 2 pi i / N (third component may be
    // given wrapped; it is unwrapped internally).
    explicit SampledCurve(const std::vector<Vec3>& samples, std::string label = "sampled");

    static SampledCurve from_csv(const std::string& path);

    void eval(double s, int order, Vec3* out) const override;
    std::string name() const override { return label_; }

  private:
    void build_from_periodic_samples(std::vector<Vec3> samples);
    // Trig series of the periodic part p(s) = gamma(s) - (0,0,s).
    std::vector<std::complex<double>> c1_, c2_, c3_;
    std::string label_;
};

// Frame samples over one period with validation (orthonormality, speed
// constancy, periodicity); the spec's FrameData view of a curve.
struct FrameData {
    std::vector<double> s;
    std::vector<Vec3> tangent, normal, binormal;
    std::vector<double> curvature;
    double c_s = 0;
    double max_gram_defect = 0;      // worst orthonormality violation
    double max_speed_spread = 0;     // relative spread of |gamma'|
};

FrameData build_frame(const Curve& curve, int nsamples = 512);

}  // namespace fns

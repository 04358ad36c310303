#include "fns/geometry/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fns/core/fft.hpp"
#include "fns/core/tolerances.hpp"

namespace fns {

namespace {
constexpr double kCurvatureFloor = 1e-8;
}

void Curve::frame_jets(double s, SJet3& t, SJet3& n, SJet3& b) const {
    Vec3 d[6];
    eval(s, 5, d);
    // tangent jet: t^{(j)} = gamma^{(j+1)} / c_s
    auto mk = [&](int off) {
        SJet3 j;
        for (int k = 0; k <= 3; ++k) {
            j.x.d[k] = d[off + k].x;
            j.y.d[k] = d[off + k].y;
            j.z.d[k] = d[off + k].z;
        }
        return j;
    };
    t = mk(1) * (1.0 / c_s_);
    SJet3 tp = mk(2) * (1.0 / c_s_);  // jets of t'
    SJet speed2 = dot(tp, tp);
    if (speed2.d[0] < kCurvatureFloor * kCurvatureFloor * c_s_ * c_s_) {
        std::ostringstream msg;
        msg << name() << ": vanishing curvature near s = " << s
            << " (|t'| = " << std::sqrt(speed2.d[0]) << "); Frenet normal undefined";
        throw std::runtime_error(msg.str());
    }
    SJet inv = SJet::constant(1.0) / sqrt(speed2);
    n = tp * inv;
    b = cross(t, n);
}

void Curve::frame(double s, Vec3& t, Vec3& n, Vec3& b) const {
    SJet3 tj, nj, bj;
    frame_jets(s, tj, nj, bj);
    t = tj.value();
    n = nj.value();
    b = bj.value();
}

double Curve::curvature(double s) const {
    Vec3 d[3];
    eval(s, 2, d);
    // kappa = |gamma' x gamma''| / |gamma'|^3
    return norm(cross(d[1], d[2])) / std::pow(norm(d[1]), 3);
}

// --- helix -----------------------------------------------------------------

HelixCurve::HelixCurve() { c_s_ = std::sqrt(2.0); }

void HelixCurve::eval(double s, int order, Vec3* out) const {
    const double c = std::cos(s), sn = std::sin(s);
    // derivatives of (cos s, sin s, s)
    const double cs[4] = {c, -sn, -c, sn};
    const double ss[4] = {sn, c, -sn, -c};
    for (int j = 0; j <= order; ++j) {
        out[j].x = cs[j & 3];
        out[j].y = ss[j & 3];
        out[j].z = j == 0 ? s : (j == 1 ? 1.0 : 0.0);
    }
}

Vec3 HelixCurve::tangent_closed(double s) {
    const double r = 1.0 / std::sqrt(2.0);
    return {-r * std::sin(s), r * std::cos(s), r};
}
Vec3 HelixCurve::normal_closed(double s) { return {-std::cos(s), -std::sin(s), 0.0}; }
Vec3 HelixCurve::binormal_closed(double s) {
    const double r = 1.0 / std::sqrt(2.0);
    return {r * std::sin(s), -r * std::cos(s), r};
}

// --- sampled curve -----------------------------------------------------------

namespace {

// Coefficients of a real periodic sequence, index-symmetric storage.
std::vector<std::complex<double>> trig_coeffs(const std::vector<double>& v) {
    const int n = int(v.size());
    std::vector<std::complex<double>> buf(n);
    for (int i = 0; i < n; ++i) buf[i] = v[i];
    fft1_forward(buf.data(), n);
    for (auto& c : buf) c /= double(n);
    return buf;
}

// Evaluate sum_m c_m (i m)^order e^{i m s} (real part), m signed. Uses the
// conjugate symmetry of real data: sum over positive m doubled.
double eval_series(const std::vector<std::complex<double>>& c, double s, int order) {
    const int n = int(c.size());
    const std::complex<double> w = std::exp(std::complex<double>(0, s));
    std::complex<double> ph = w;  // e^{i m s} for m = 1
    double acc = order == 0 ? c[0].real() : 0.0;
    for (int m = 1; m < n / 2; ++m) {
        std::complex<double> t = c[m] * ph;
        for (int j = 0; j < order; ++j) t *= std::complex<double>(0, m);
        acc += 2.0 * t.real();
        ph *= w;
    }
    // Nyquist term kept only at order 0 (its odd derivatives are ambiguous).
    if (order == 0 && n % 2 == 0) acc += (c[n / 2] * ph).real();
    return acc;
}

}  // namespace

SampledCurve::SampledCurve(const std::vector<Vec3>& samples, std::string label)
    : label_(std::move(label)) {
    if (samples.size() < 8) throw std::invalid_argument("SampledCurve: need at least 8 samples");
    build_from_periodic_samples(samples);
}

void SampledCurve::build_from_periodic_samples(std::vector<Vec3> samples) {
    const int n = int(samples.size());
    // Unwrap the vertical component against the linear ramp.
    std::vector<double> p1(n), p2(n), p3(n);
    for (int i = 0; i < n; ++i) {
        const double s = kTwoPi * i / n;
        p1[i] = samples[i].x;
        p2[i] = samples[i].y;
        p3[i] = wrap_pi(samples[i].z - s);
    }
    c1_ = trig_coeffs(p1);
    c2_ = trig_coeffs(p2);
    c3_ = trig_coeffs(p3);

    // Reparameterize to constant speed via the spectrally exact arclength
    // function: |gamma'| is smooth periodic, so its trig series integrates
    // in closed form and ell(s) is available to machine accuracy.
    const int nf = std::max(16 * n, 2048);
    std::vector<double> speed_samples(nf);
    auto speed_at = [&](double s) {
        const double d1 = eval_series(c1_, s, 1);
        const double d2 = eval_series(c2_, s, 1);
        const double d3 = eval_series(c3_, s, 1) + 1.0;
        return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
    };
    for (int i = 0; i < nf; ++i) speed_samples[i] = speed_at(kTwoPi * i / nf);
    const auto sc = trig_coeffs(speed_samples);
    const double total = sc[0].real() * kTwoPi;
    c_s_ = total / kTwoPi;
    auto arclen = [&](double s) {
        // ell(s) = c_s s + sum_{m != 0} c_m (e^{i m s} - 1)/(i m)
        std::complex<double> acc(0, 0);
        for (int m = 1; m < nf; ++m) {
            const int ms = m <= nf / 2 ? m : m - nf;
            if (ms == 0 || std::abs(ms) == nf / 2) continue;
            acc += sc[m] * (std::exp(std::complex<double>(0, ms * s)) - 1.0) /
                   std::complex<double>(0, ms);
        }
        return sc[0].real() * s + acc.real();
    };

    double spread = 0.0;
    for (int i = 0; i < nf; i += 7) spread = std::max(spread, std::abs(speed_samples[i] - c_s_));
    if (spread / c_s_ > tol::constant_speed_rel) {
        // Resample the curve at uniform arclength; the composition needs
        // more modes than the input data, so oversample.
        const int nr = std::max(4 * n, 256);
        std::vector<Vec3> uniform(nr);
        double s = 0.0;
        for (int i = 0; i < nr; ++i) {
            const double target = total * i / nr;
            for (int it = 0; it < 60; ++it) {
                const double f = arclen(s) - target;
                if (std::abs(f) < 1e-14 * total) break;
                s -= f / speed_at(s);
            }
            uniform[i] = {eval_series(c1_, s, 0), eval_series(c2_, s, 0),
                          eval_series(c3_, s, 0) + s};
        }
        std::vector<double> q1(nr), q2(nr), q3(nr);
        for (int i = 0; i < nr; ++i) {
            const double snew = kTwoPi * i / nr;
            q1[i] = uniform[i].x;
            q2[i] = uniform[i].y;
            q3[i] = uniform[i].z - snew;
        }
        c1_ = trig_coeffs(q1);
        c2_ = trig_coeffs(q2);
        c3_ = trig_coeffs(q3);
        double csum = 0.0;
        for (int i = 0; i < nf; ++i) csum += speed_at(kTwoPi * i / nf);
        c_s_ = csum / nf;
    }
}

SampledCurve SampledCurve::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("SampledCurve: cannot open " + path);
    std::vector<std::pair<double, Vec3>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double s, a, b, c;
        if (ss >> s >> a >> b >> c) rows.push_back({s, {a, b, c}});
    }
    if (rows.size() < 8) throw std::runtime_error("SampledCurve: too few rows in " + path);
    std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
    const int n = int(rows.size());
    for (int i = 0; i < n; ++i) {
        const double expect = rows[0].first + (kTwoPi * i) / n;
        if (std::abs(rows[i].first - expect) > 1e-9 * kTwoPi)
            throw std::runtime_error("SampledCurve: samples must be equispaced in s over one period");
    }
    std::vector<Vec3> samples(n);
    for (int i = 0; i < n; ++i) samples[i] = rows[i].second;
    return SampledCurve(samples, "csv:" + path);
}

void SampledCurve::eval(double s, int order, Vec3* out) const {
    for (int j = 0; j <= order; ++j) {
        out[j].x = eval_series(c1_, s, j);
        out[j].y = eval_series(c2_, s, j);
        out[j].z = eval_series(c3_, s, j) + (j == 0 ? s : (j == 1 ? 1.0 : 0.0));
    }
}

// --- frame table -------------------------------------------------------------

FrameData build_frame(const Curve& curve, int nsamples) {
    // Dense scan: the Frenet normal degenerates wherever the curvature
    // vanishes, so reject such curves up front, naming the location.
    {
        const int nscan = std::max(8 * nsamples, 2048);
        for (int i = 0; i < nscan; ++i) {
            const double s = kTwoPi * i / nscan;
            if (curve.curvature(s) < 1e-4) {
                std::ostringstream msg;
                msg << curve.name() << ": vanishing curvature near s = " << s
                    << " (kappa = " << curve.curvature(s) << ")";
                throw std::runtime_error(msg.str());
            }
        }
    }
    FrameData fd;
    fd.c_s = curve.speed();
    fd.s.resize(nsamples);
    fd.tangent.resize(nsamples);
    fd.normal.resize(nsamples);
    fd.binormal.resize(nsamples);
    fd.curvature.resize(nsamples);
    double vmin = 1e300, vmax = 0.0;
    for (int i = 0; i < nsamples; ++i) {
        const double s = kTwoPi * i / nsamples;
        fd.s[i] = s;
        Vec3 t, n, b;
        curve.frame(s, t, n, b);
        fd.tangent[i] = t;
        fd.normal[i] = n;
        fd.binormal[i] = b;
        fd.curvature[i] = curve.curvature(s);

        Vec3 d[2];
        curve.eval(s, 1, d);
        vmin = std::min(vmin, norm(d[1]));
        vmax = std::max(vmax, norm(d[1]));

        double gram = 0.0;
        gram = std::max(gram, std::abs(dot(t, t) - 1.0));
        gram = std::max(gram, std::abs(dot(n, n) - 1.0));
        gram = std::max(gram, std::abs(dot(b, b) - 1.0));
        gram = std::max(gram, std::abs(dot(t, n)));
        gram = std::max(gram, std::abs(dot(t, b)));
        gram = std::max(gram, std::abs(dot(n, b)));
        fd.max_gram_defect = std::max(fd.max_gram_defect, gram);
    }
    fd.max_speed_spread = (vmax - vmin) / fd.c_s;
    return fd;
}

}  // namespace fns

#include "fns/core/field.hpp"

#include <cmath>

#include "fns/simd/kernels.hpp"

namespace fns {

bool Field::finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

void Field::fill(const std::function<double(double, double, double)>& f, int c) {
    for (int i3 = 0; i3 < grid_.n3; ++i3)
        for (int i2 = 0; i2 < grid_.n2; ++i2)
            for (int i1 = 0; i1 < grid_.n1; ++i1)
                at(c, i3, i2, i1) = f(grid_.x1(i1), grid_.x2(i2), grid_.x3(i3));
}

void Field::fill_vector(const std::function<void(double, double, double, double[3])>& f) {
    double v[3];
    for (int i3 = 0; i3 < grid_.n3; ++i3)
        for (int i2 = 0; i2 < grid_.n2; ++i2)
            for (int i1 = 0; i1 < grid_.n1; ++i1) {
                f(grid_.x1(i1), grid_.x2(i2), grid_.x3(i3), v);
                for (int c = 0; c < 3; ++c) at(c, i3, i2, i1) = v[c];
            }
}

Field& Field::operator+=(const Field& o) {
    simd::axpy(values_.data(), 1.0, o.values_.data(), values_.size());
    return *this;
}
Field& Field::operator-=(const Field& o) {
    simd::axpy(values_.data(), -1.0, o.values_.data(), values_.size());
    return *this;
}
Field& Field::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

double Field::boundary_mass(double frac) const {
    const double r0 = frac * grid_.L;
    double acc = 0.0;
    for (int i2 = 0; i2 < grid_.n2; ++i2)
        for (int i1 = 0; i1 < grid_.n1; ++i1) {
            const double x1 = grid_.x1(i1), x2 = grid_.x2(i2);
            if (x1 * x1 + x2 * x2 <= r0 * r0) continue;
            for (int c = 0; c < ncomp_; ++c)
                for (int i3 = 0; i3 < grid_.n3; ++i3) acc += std::abs(at(c, i3, i2, i1));
        }
    return acc * grid_.cell_volume();
}

double Field::l2_sq() const {
    return simd::reduce_sum_sq(values_.data(), values_.size()) * grid_.cell_volume();
}

double Field::max_abs() const { return simd::reduce_abs_max(values_.data(), values_.size()); }

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    simd::caxpy(coeffs_.data(), cplx(1.0, 0.0), o.coeffs_.data(), coeffs_.size());
    return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
    simd::caxpy(coeffs_.data(), cplx(-1.0, 0.0), o.coeffs_.data(), coeffs_.size());
    return *this;
}
SpectralField& SpectralField::operator*=(double a) {
    for (cplx& v : coeffs_) v *= a;
    return *this;
}

double SpectralField::coeff_norm_sq() const {
    return simd::reduce_sum_sq(reinterpret_cast<const double*>(coeffs_.data()), 2 * coeffs_.size());
}

double SpectralField::aliased_band_fraction() const {
    double kept = 0.0, cut = 0.0;
    for (int c = 0; c < ncomp_; ++c)
        for (int m3 = 0; m3 < grid_.n3; ++m3)
            for (int m2 = 0; m2 < grid_.n2; ++m2)
                for (int m1 = 0; m1 < grid_.n1; ++m1) {
                    const double e = std::norm(at(c, m3, m2, m1));
                    (grid_.mode_kept(m1, m2, m3) ? kept : cut) += e;
                }
    const double tot = kept + cut;
    return tot > 0.0 ? cut / tot : 0.0;
}

double SpectralField::hermitian_defect() const {
    double worst = 0.0;
    for (int c = 0; c < ncomp_; ++c)
        for (int m3 = 0; m3 < grid_.n3; ++m3)
            for (int m2 = 0; m2 < grid_.n2; ++m2)
                for (int m1 = 0; m1 < grid_.n1; ++m1) {
                    const int j3 = (grid_.n3 - m3) % grid_.n3;
                    const int j2 = (grid_.n2 - m2) % grid_.n2;
                    const int j1 = (grid_.n1 - m1) % grid_.n1;
                    const cplx d = at(c, m3, m2, m1) - std::conj(at(c, j3, j2, j1));
                    worst = std::max(worst, std::abs(d));
                }
    return worst;
}

}  // namespace fns

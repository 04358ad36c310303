#pragma once

// Real sampled fields (1 or 3 components) and their complex spectral twins.
// Layout: x3-major, then x2, then x1; components are contiguous blocks.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fns/core/grid.hpp"

namespace fns {

using cplx = std::complex<double>;

class Field {
  public:
    Field() = default;
    Field(const GridSpec& g, int ncomp) : grid_(g), ncomp_(ncomp) {
        if (ncomp != 1 && ncomp != 3) throw std::invalid_argument("Field: 1 or 3 components");
        g.validate();
        values_.assign(std::size_t(ncomp) * g.points(), 0.0);
    }

    static Field scalar(const GridSpec& g) { return Field(g, 1); }
    static Field vector(const GridSpec& g) { return Field(g, 3); }

    const GridSpec& grid() const { return grid_; }
    int components() const { return ncomp_; }
    std::size_t size() const { return values_.size(); }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    double* comp(int c) { return values_.data() + std::size_t(c) * grid_.points(); }
    const double* comp(int c) const { return values_.data() + std::size_t(c) * grid_.points(); }

    double& at(int c, int i3, int i2, int i1) {
        return values_[std::size_t(c) * grid_.points() + grid_.index(i3, i2, i1)];
    }
    double at(int c, int i3, int i2, int i1) const {
        return values_[std::size_t(c) * grid_.points() + grid_.index(i3, i2, i1)];
    }

    bool finite() const;

    // Fill from a callable f(x1,x2,x3) -> double (scalar) or the component
    // callable f(c,x1,x2,x3) (vector).
    void fill(const std::function<double(double, double, double)>& f, int c = 0);
    void fill_vector(const std::function<void(double, double, double, double out[3])>& f);

    // In-place algebra.
    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);

    // integral |f| over {|x~| > frac * L}; truncation trust metric.
    double boundary_mass(double frac = 0.9) const;
    // integral over the box of sum_c f_c^2, cell-volume weighted.
    double l2_sq() const;
    double max_abs() const;

  private:
    GridSpec grid_;
    int ncomp_ = 1;
    std::vector<double> values_;
};

class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(const GridSpec& g, int ncomp) : grid_(g), ncomp_(ncomp) {
        if (ncomp != 1 && ncomp != 3) throw std::invalid_argument("SpectralField: 1 or 3 comps");
        coeffs_.assign(std::size_t(ncomp) * g.points(), cplx(0.0, 0.0));
    }

    const GridSpec& grid() const { return grid_; }
    int components() const { return ncomp_; }
    std::size_t size() const { return coeffs_.size(); }

    cplx* data() { return coeffs_.data(); }
    const cplx* data() const { return coeffs_.data(); }
    cplx* comp(int c) { return coeffs_.data() + std::size_t(c) * grid_.points(); }
    const cplx* comp(int c) const { return coeffs_.data() + std::size_t(c) * grid_.points(); }

    cplx& at(int c, int m3, int m2, int m1) {
        return coeffs_[std::size_t(c) * grid_.points() + grid_.index(m3, m2, m1)];
    }
    cplx at(int c, int m3, int m2, int m1) const {
        return coeffs_[std::size_t(c) * grid_.points() + grid_.index(m3, m2, m1)];
    }

    // Coefficient by signed mode indices (m1,m2 in [-n/2,n/2), zeta likewise).
    cplx mode(int c, int zeta, int m2s, int m1s) const {
        auto wrap = [](int s, int n) { return s >= 0 ? s : s + n; };
        return at(c, wrap(zeta, grid_.n3), wrap(m2s, grid_.n2), wrap(m1s, grid_.n1));
    }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);

    // L2 of coefficients (Parseval partner of the physical sum).
    double coeff_norm_sq() const;
    // Energy fraction in modes removed by the dealias rule.
    double aliased_band_fraction() const;
    // Max |conj-symmetry defect|; zero for transforms of real data.
    double hermitian_defect() const;

  private:
    GridSpec grid_;
    int ncomp_ = 1;
    std::vector<cplx> coeffs_;
};

}  // namespace fns

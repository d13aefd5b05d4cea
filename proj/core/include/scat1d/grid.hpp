#pragma once

#include <complex>
#include <vector>

#include "scat1d/errors.hpp"

namespace scat1d {

using cplx = std::complex<double>;

/// Uniform spatial grid x_k = x_min + k*h, k = 0 .. n_points-1.
class Grid {
  public:
    Grid() = default;
    Grid(double x_min, double x_max, std::size_t n_points);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }

    double operator[](std::size_t k) const { return x_min_ + double(k) * h_; }
    const std::vector<double>& points() const { return points_; }

    /// Index of the node closest to x.
    std::size_t nearest(double x) const;

    bool operator==(const Grid& o) const {
        return x_min_ == o.x_min_ && x_max_ == o.x_max_ && n_ == o.n_;
    }

  private:
    double x_min_ = -1.0, x_max_ = 1.0;
    std::size_t n_ = 3;
    double h_ = 1.0;
    std::vector<double> points_;
};

/// Complex-valued function sampled on a uniform grid.
struct ComplexSignal {
    Grid grid;
    std::vector<cplx> values;

    ComplexSignal() = default;
    explicit ComplexSignal(const Grid& g) : grid(g), values(g.size(), cplx(0.0)) {}
    ComplexSignal(const Grid& g, std::vector<cplx> v);

    std::size_t size() const { return values.size(); }
    cplx& operator[](std::size_t k) { return values[k]; }
    const cplx& operator[](std::size_t k) const { return values[k]; }
};

// Trapezoid quadrature on the grid. The composite trapezoid rule is the one
// quadrature used throughout; weights are h everywhere except h/2 at the two
// ends.
double trapezoid(const Grid& g, const std::vector<double>& f);
cplx trapezoid(const Grid& g, const std::vector<cplx>& f);

/// Cumulative integral F(x_k) = int_{x_0}^{x_k} f, F(x_0) = 0 (trapezoid).
std::vector<double> cumulative_trapezoid(const Grid& g, const std::vector<double>& f);

/// L^p norm with trapezoid weights; p = inf is the sup of |f|.
double lp_norm(const Grid& g, const std::vector<cplx>& f, double p);
double lp_norm(const Grid& g, const std::vector<double>& f, double p);
inline double l2_norm(const ComplexSignal& s) { return lp_norm(s.grid, s.values, 2.0); }
double sup_norm(const std::vector<cplx>& f);
double sup_norm(const std::vector<double>& f);

/// Trapezoid-weighted inner product <f, g> = int f conj(g).
cplx inner_product(const Grid& g, const std::vector<cplx>& f, const std::vector<cplx>& h);

// elementwise helpers
void axpy(ComplexSignal& y, cplx a, const ComplexSignal& x);
ComplexSignal operator+(const ComplexSignal& a, const ComplexSignal& b);
ComplexSignal operator-(const ComplexSignal& a, const ComplexSignal& b);
ComplexSignal operator*(cplx a, const ComplexSignal& b);

} // namespace scat1d

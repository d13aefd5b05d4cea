#include "scat1d/grid.hpp"

#include <algorithm>
#include <cmath>

namespace scat1d {

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points) {
    if (!(x_min < x_max)) throw input_error("Grid: x_min must be < x_max");
    if (n_points < 3) throw input_error("Grid: need at least 3 points");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw input_error("Grid: non-finite bounds");
    h_ = (x_max_ - x_min_) / double(n_ - 1);
    points_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) points_[k] = x_min_ + double(k) * h_;
}

std::size_t Grid::nearest(double x) const {
    double t = (x - x_min_) / h_;
    long k = std::lround(t);
    if (k < 0) k = 0;
    if (k >= long(n_)) k = long(n_) - 1;
    return std::size_t(k);
}

ComplexSignal::ComplexSignal(const Grid& g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw input_error("ComplexSignal: value count does not match grid");
}

template <class T>
static T trapezoid_impl(const Grid& g, const std::vector<T>& f) {
    if (f.size() != g.size()) throw input_error("trapezoid: size mismatch");
    T acc = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k) acc += f[k];
    return acc * g.spacing();
}

double trapezoid(const Grid& g, const std::vector<double>& f) { return trapezoid_impl(g, f); }
cplx trapezoid(const Grid& g, const std::vector<cplx>& f) { return trapezoid_impl(g, f); }

std::vector<double> cumulative_trapezoid(const Grid& g, const std::vector<double>& f) {
    std::vector<double> F(f.size(), 0.0);
    const double h = g.spacing();
    for (std::size_t k = 1; k < f.size(); ++k)
        F[k] = F[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
    return F;
}

double sup_norm(const std::vector<cplx>& f) {
    double m = 0.0;
    for (const auto& v : f) m = std::max(m, std::abs(v));
    return m;
}

double sup_norm(const std::vector<double>& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

template <class T>
static double lp_impl(const Grid& g, const std::vector<T>& f, double p) {
    if (std::isinf(p)) return sup_norm(f);
    if (!(p > 0)) throw input_error("lp_norm: p must be positive");
    std::vector<double> a(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) a[k] = std::pow(std::abs(f[k]), p);
    return std::pow(trapezoid(g, a), 1.0 / p);
}

double lp_norm(const Grid& g, const std::vector<cplx>& f, double p) { return lp_impl(g, f, p); }
double lp_norm(const Grid& g, const std::vector<double>& f, double p) { return lp_impl(g, f, p); }

cplx inner_product(const Grid& g, const std::vector<cplx>& f, const std::vector<cplx>& h) {
    if (f.size() != h.size() || f.size() != g.size())
        throw input_error("inner_product: size mismatch");
    std::vector<cplx> prod(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) prod[k] = f[k] * std::conj(h[k]);
    return trapezoid(g, prod);
}

void axpy(ComplexSignal& y, cplx a, const ComplexSignal& x) {
    if (!(y.grid == x.grid)) throw input_error("axpy: grid mismatch");
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

ComplexSignal operator+(const ComplexSignal& a, const ComplexSignal& b) {
    ComplexSignal r = a;
    axpy(r, 1.0, b);
    return r;
}

ComplexSignal operator-(const ComplexSignal& a, const ComplexSignal& b) {
    ComplexSignal r = a;
    axpy(r, -1.0, b);
    return r;
}

ComplexSignal operator*(cplx a, const ComplexSignal& b) {
    ComplexSignal r = b;
    for (auto& v : r.values) v *= a;
    return r;
}

} // namespace scat1d

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace scat1d {

using cplx = std::complex<double>;

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

/// Monotone (Fritsch-Carlson) cubic interpolant through strictly
/// increasing abscissae. Monotone data produce a monotone interpolant,
/// which keeps table inversion well defined.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, d_; // nodes, values, node derivatives
};

/// Piecewise-linear interpolation with clamped ends.
double lerp_table(const std::vector<double>& x, const std::vector<double>& y, double q);
cplx lerp_table(const std::vector<double>& x, const std::vector<cplx>& y, double q);

/// Least-squares straight line y ~= slope*x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// D_lambda(u) = (e^{2 i lambda u} - 1) / (2 i lambda), evaluated in the
/// cancellation-free form e^{i lambda u} sin(lambda u)/lambda with a series
/// fallback for |lambda u| below 1e-6. D_0(u) = u.
cplx d_lambda(cplx lambda, double u);

/// Run fn(i) for i in [0, n). Each worker writes to disjoint slots chosen by
/// the caller, so results do not depend on the number of jobs.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int jobs = 0);

/// Process-wide default for parallel_for's job count (0 = hardware).
void set_default_jobs(int jobs);
int default_jobs();

/// Banded LU solve with partial pivoting. `lower`/`upper` are the numbers of
/// sub-/super-diagonals of A, stored by solve() in band format.
class BandedMatrix {
  public:
    BandedMatrix(std::size_t n, int lower, int upper);
    cplx& at(std::size_t i, std::size_t j);
    void factor();                       // in-place LU with partial pivoting
    void solve(std::vector<cplx>& rhs) const;

  private:
    std::size_t n_;
    int kl_, ku_;
    std::vector<cplx> a_; // (2*kl_+ku_+1) x n, LAPACK-style band storage
    std::vector<int> piv_;
    bool factored_ = false;
};

/// FNV-1a hash of a byte string, for config fingerprints in manifests.
std::uint64_t fnv1a(const std::string& s);

/// Dense row-major 2-D array, rows indexed first.
template <class T>
class Array2D {
  public:
    Array2D() = default;
    Array2D(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T* row(std::size_t i) { return data_.data() + i * cols_; }
    const T* row(std::size_t i) const { return data_.data() + i * cols_; }

    std::vector<T> row_copy(std::size_t i) const {
        return std::vector<T>(row(i), row(i) + cols_);
    }
    const std::vector<T>& data() const { return data_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

} // namespace scat1d

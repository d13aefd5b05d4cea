#include "scat1d/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "scat1d/errors.hpp"

namespace scat1d {

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw input_error("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw input_error("MonotoneCubic: need >= 2 nodes");
    for (std::size_t k = 1; k < n; ++k)
        if (!(x_[k] > x_[k - 1])) throw input_error("MonotoneCubic: x not strictly increasing");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = x_[k + 1] - x_[k];
        delta[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    d_.assign(n, 0.0);
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0) {
            d_[k] = 0.0;
        } else {
            double w1 = 2.0 * h[k] + h[k - 1];
            double w2 = h[k] + 2.0 * h[k - 1];
            d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    // Fritsch-Carlson limiter at the ends
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (delta[k] == 0.0) {
            d_[k] = d_[k + 1] = 0.0;
        } else {
            double a = d_[k] / delta[k], b = d_[k + 1] / delta[k];
            double s = a * a + b * b;
            if (s > 9.0) {
                double t = 3.0 / std::sqrt(s);
                d_[k] = t * a * delta[k];
                d_[k + 1] = t * b * delta[k];
            }
        }
    }
}

double MonotoneCubic::operator()(double xq) const {
    const std::size_t n = x_.size();
    if (xq <= x_.front()) return y_.front() + d_.front() * (xq - x_.front());
    if (xq >= x_.back()) return y_.back() + d_.back() * (xq - x_.back());
    std::size_t lo = std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin() - 1;
    if (lo >= n - 1) lo = n - 2;
    double h = x_[lo + 1] - x_[lo];
    double t = (xq - x_[lo]) / h;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    double h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t);
    double h11 = t * t * (t - 1);
    return h00 * y_[lo] + h10 * h * d_[lo] + h01 * y_[lo + 1] + h11 * h * d_[lo + 1];
}

template <class T>
static T lerp_impl(const std::vector<double>& x, const std::vector<T>& y, double q) {
    if (x.size() != y.size() || x.size() < 2) throw input_error("lerp_table: bad table");
    if (q <= x.front()) return y.front();
    if (q >= x.back()) return y.back();
    std::size_t lo = std::upper_bound(x.begin(), x.end(), q) - x.begin() - 1;
    double t = (q - x[lo]) / (x[lo + 1] - x[lo]);
    return y[lo] * (1.0 - t) + y[lo + 1] * t;
}

double lerp_table(const std::vector<double>& x, const std::vector<double>& y, double q) {
    return lerp_impl(x, y, q);
}
cplx lerp_table(const std::vector<double>& x, const std::vector<cplx>& y, double q) {
    return lerp_impl(x, y, q);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw input_error("fit_line: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    LineFit f;
    double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

cplx d_lambda(cplx lambda, double u) {
    cplx z = lambda * u;
    if (std::abs(z) < 1e-6) {
        // sin(z)/z = 1 - z^2/6 + z^4/120
        cplx z2 = z * z;
        return u * std::exp(cplx(0, 1) * z) * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
    }
    return std::exp(cplx(0, 1) * z) * std::sin(z) / lambda;
}

namespace {
std::atomic<int> g_jobs{0};
}

void set_default_jobs(int jobs) { g_jobs.store(jobs); }

int default_jobs() {
    int j = g_jobs.load();
    if (j > 0) return j;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int jobs) {
    if (n == 0) return;
    int nw = jobs > 0 ? jobs : default_jobs();
    if (nw > int(n)) nw = int(n);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false}; // first error wins
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    fn(i);
                } catch (...) {
                    bool expected = false;
                    if (failed.compare_exchange_strong(expected, true))
                        err = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

BandedMatrix::BandedMatrix(std::size_t n, int lower, int upper)
    : n_(n), kl_(lower), ku_(upper), a_((2 * lower + upper + 1) * n, cplx(0.0)), piv_(n, 0) {}

cplx& BandedMatrix::at(std::size_t i, std::size_t j) {
    // row i of A lands in band row kl_+ku_+i-j of column j
    int r = kl_ + ku_ + int(i) - int(j);
    return a_[std::size_t(r) + j * std::size_t(2 * kl_ + ku_ + 1)];
}

void BandedMatrix::factor() {
    const int ldab = 2 * kl_ + ku_ + 1;
    auto A = [&](int r, int c) -> cplx& { return a_[std::size_t(r) + std::size_t(c) * ldab]; };
    const int n = int(n_);
    for (int j = 0; j < n; ++j) {
        int pmax = kl_ + ku_;
        int ilast = std::min(n - 1, j + kl_);
        int p = pmax;
        double best = std::abs(A(pmax, j));
        for (int i = j + 1; i <= ilast; ++i) {
            double v = std::abs(A(kl_ + ku_ + i - j, j));
            if (v > best) {
                best = v;
                p = kl_ + ku_ + i - j;
            }
        }
        int prow = j + (p - pmax); // global pivot row
        piv_[j] = prow;
        if (best == 0.0) throw divergence_error("BandedMatrix: singular pivot", 0.0);
        if (prow != j) {
            int jmax = std::min(n - 1, j + kl_ + ku_);
            for (int c = j; c <= jmax; ++c)
                std::swap(A(kl_ + ku_ + j - c, c), A(kl_ + ku_ + prow - c, c));
        }
        cplx piv = A(pmax, j);
        for (int i = j + 1; i <= ilast; ++i) {
            int r = kl_ + ku_ + i - j;
            cplx m = A(r, j) / piv;
            A(r, j) = m;
            int jmax = std::min(n - 1, j + kl_ + ku_);
            for (int c = j + 1; c <= jmax; ++c)
                A(kl_ + ku_ + i - c, c) -= m * A(kl_ + ku_ + j - c, c);
        }
    }
    factored_ = true;
}

void BandedMatrix::solve(std::vector<cplx>& rhs) const {
    if (!factored_) throw precondition_error("BandedMatrix: factor() first");
    if (rhs.size() != n_) throw input_error("BandedMatrix: rhs size mismatch");
    const int ldab = 2 * kl_ + ku_ + 1;
    auto A = [&](int r, int c) -> const cplx& {
        return a_[std::size_t(r) + std::size_t(c) * ldab];
    };
    const int n = int(n_);
    for (int j = 0; j < n; ++j) {
        if (piv_[j] != j) std::swap(rhs[j], rhs[piv_[j]]);
        int ilast = std::min(n - 1, j + kl_);
        for (int i = j + 1; i <= ilast; ++i)
            rhs[i] -= A(kl_ + ku_ + i - j, j) * rhs[j];
    }
    for (int i = n - 1; i >= 0; --i) {
        int jmax = std::min(n - 1, i + kl_ + ku_);
        for (int j = i + 1; j <= jmax; ++j)
            rhs[i] -= A(kl_ + ku_ + i - j, j) * rhs[j];
        rhs[i] /= A(kl_ + ku_, i);
    }
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace scat1d

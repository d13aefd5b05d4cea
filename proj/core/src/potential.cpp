#include "scat1d/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scat1d/numerics.hpp"

namespace scat1d {

SampledPotential::SampledPotential(Grid grid, std::vector<double> values,
                                   std::shared_ptr<const ScatteringOracle> oracle,
                                   std::string name)
    : grid_(std::move(grid)), values_(std::move(values)), name_(std::move(name)),
      oracle_(std::move(oracle)) {
    if (values_.size() != grid_.size())
        throw input_error("SampledPotential: value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw input_error("SampledPotential: non-finite value");

    std::vector<double> absv(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) absv[k] = std::abs(values_[k]);
    l1_norm_ = trapezoid(grid_, absv);

    // eta and gamma_fn as suffix cumulative integrals
    const std::size_t n = grid_.size();
    eta_.assign(n, 0.0);
    const double h = grid_.spacing();
    for (std::size_t k = n - 1; k > 0; --k)
        eta_[k - 1] = eta_[k] + 0.5 * h * (absv[k - 1] + absv[k]);
    gamma_fn_.assign(n, 0.0);
    for (std::size_t k = n - 1; k > 0; --k)
        gamma_fn_[k - 1] = gamma_fn_[k] + 0.5 * h * (eta_[k - 1] + eta_[k]);

    sup_lo_ = 1;
    sup_hi_ = 0; // empty
    bool found = false;
    for (std::size_t k = 0; k < n; ++k)
        if (values_[k] != 0.0) {
            if (!found) { sup_lo_ = k; found = true; }
            sup_hi_ = k;
        }

    weighted_norms_[0.0] = l1_norm_;
    weighted_norm(1.0);
    weighted_norm(2.0);
}

double SampledPotential::eta_at(double x) const {
    return lerp_table(grid_.points(), eta_, x);
}

double SampledPotential::gamma_at(double x) const {
    return lerp_table(grid_.points(), gamma_fn_, x);
}

double SampledPotential::weighted_norm(double gamma) const {
    if (!std::isfinite(gamma) || gamma < 0)
        throw input_error("weighted_norm: gamma must be finite and >= 0");
    auto it = weighted_norms_.find(gamma);
    if (it != weighted_norms_.end()) return it->second;
    std::vector<double> f(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k)
        f[k] = std::pow(1.0 + std::abs(grid_[k]), gamma) * std::abs(values_[k]);
    double v = trapezoid(grid_, f);
    weighted_norms_[gamma] = v;
    return v;
}

double weighted_norm(const SampledPotential& V, double gamma) {
    return V.weighted_norm(gamma);
}

SampledPotential SampledPotential::resampled(const Grid& g) const {
    MonotoneCubic interp(grid_.points(), values_);
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double x = g[k];
        v[k] = (x < grid_.x_min() || x > grid_.x_max()) ? 0.0 : interp(x);
    }
    return SampledPotential(g, std::move(v), oracle_, name_);
}

SampledPotential make_zero(const Grid& g) {
    return SampledPotential(g, std::vector<double>(g.size(), 0.0), nullptr, "zero");
}

SampledPotential make_poschl_teller(const Grid& g) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double s = 1.0 / std::cosh(g[k]);
        v[k] = -2.0 * s * s;
    }
    auto oracle = std::make_shared<ScatteringOracle>();
    const cplx I(0, 1);
    oracle->m_plus = [I](cplx l, double x) { return (l + I * std::tanh(x)) / (l + I); };
    oracle->m_minus = [I](cplx l, double x) { return (l - I * std::tanh(x)) / (l + I); };
    oracle->wronskian = [I](cplx l) { return -2.0 * I * l * (l - I) / (l + I); };
    oracle->resonant = true;
    oracle->c0 = -1.0;
    oracle->bound_state_energies = {-1.0};
    return SampledPotential(g, std::move(v), oracle, "poschl-teller");
}

namespace {

// Plane-wave matching data for the square well, valid for complex lambda.
// f_+ = e^{i l x} for x > w; inside A e^{i mu x} + B e^{-i mu x} with
// mu = sqrt(l^2 + d); to the left alpha e^{i l x} + beta e^{-i l x}.
struct WellMatch {
    cplx A, B, alpha, beta, mu;
};

WellMatch well_match(cplx l, double d, double w) {
    const cplx I(0, 1);
    WellMatch r;
    cplx mu = std::sqrt(l * l + d);
    if (std::real(mu) < 0.0) mu = -mu;
    r.mu = mu;
    r.A = std::exp(I * (l - mu) * w) * (1.0 + l / mu) * 0.5;
    r.B = std::exp(I * (l + mu) * w) * (1.0 - l / mu) * 0.5;
    cplx em = std::exp(-I * mu * w), ep = std::exp(I * mu * w);
    cplx P = r.A * em + r.B * ep;          // f_+(-w)
    cplx Q = I * mu * (r.A * em - r.B * ep); // f_+'(-w)
    cplx el = std::exp(-I * l * w);
    r.alpha = (P + Q / (I * l)) * 0.5 / el;
    r.beta = (P - Q / (I * l)) * 0.5 * el;
    return r;
}

} // namespace

SampledPotential make_square_well(const Grid& g, double depth, double half_width) {
    if (!std::isfinite(depth) || !std::isfinite(half_width))
        throw input_error("make_square_well: non-finite parameter");
    if (!(half_width > 0)) throw input_error("make_square_well: half_width must be > 0");
    const double w = half_width, d = depth;
    const double edge_eps = g.spacing() * 1e-9;
    std::vector<double> v(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        double ax = std::abs(g[k]);
        if (std::abs(ax - w) <= edge_eps)
            v[k] = -0.5 * d; // edge node: half value keeps the sampled mass right
        else if (ax < w)
            v[k] = -d;
    }

    auto oracle = std::make_shared<ScatteringOracle>();
    const cplx I(0, 1);
    auto f_plus = [d, w, I](cplx l, double x) -> cplx {
        if (x >= w) return std::exp(I * l * x);
        WellMatch m = well_match(l, d, w);
        if (x >= -w) return m.A * std::exp(I * m.mu * x) + m.B * std::exp(-I * m.mu * x);
        return m.alpha * std::exp(I * l * x) + m.beta * std::exp(-I * l * x);
    };
    // lambda = 0 handled exactly; elsewhere strip the plane wave.
    const double mu0 = std::sqrt(d);
    auto m_plus0 = [d, w, mu0](double x) -> double {
        if (d == 0.0) return 1.0;
        if (x >= w) return 1.0;
        if (x >= -w) return std::cos(mu0 * (x - w));
        return std::cos(2.0 * mu0 * w) + mu0 * std::sin(2.0 * mu0 * w) * (x + w);
    };
    oracle->m_plus = [f_plus, m_plus0, I](cplx l, double x) -> cplx {
        if (std::abs(l) < 1e-9) return m_plus0(x);
        return std::exp(-I * l * x) * f_plus(l, x);
    };
    oracle->m_minus = [oracle](cplx l, double x) { return oracle->m_plus(l, -x); };
    oracle->wronskian = [d, w, I, mu0](cplx l) -> cplx {
        if (d == 0.0) return -2.0 * I * l;
        if (std::abs(l) < 1e-9) return -mu0 * std::sin(2.0 * mu0 * w);
        return -2.0 * I * l * well_match(l, d, w).alpha;
    };
    // bound states: zeros of W(i kappa) on (0, sqrt(d))
    if (d > 0.0) {
        auto w_ik = [&](double kappa) {
            return std::real(oracle->wronskian(cplx(0.0, kappa)));
        };
        const int scan = 2000;
        double kmax = std::sqrt(d) * (1.0 - 1e-12);
        double prev_k = kmax * 1e-6, prev_w = w_ik(prev_k);
        for (int s = 1; s <= scan; ++s) {
            double kk = prev_k;
            double k2 = kmax * double(s) / scan;
            if (k2 <= kk) continue;
            double w2 = w_ik(k2);
            if (prev_w == 0.0) oracle->bound_state_energies.push_back(-kk * kk);
            if (prev_w * w2 < 0.0) {
                double a = kk, b = k2;
                for (int it = 0; it < 100; ++it) {
                    double mid = 0.5 * (a + b);
                    if (w_ik(a) * w_ik(mid) <= 0.0) b = mid; else a = mid;
                }
                double kr = 0.5 * (a + b);
                oracle->bound_state_energies.push_back(-kr * kr);
            }
            prev_k = k2;
            prev_w = w2;
        }
        std::sort(oracle->bound_state_energies.begin(), oracle->bound_state_energies.end());
    }
    oracle->resonant = d > 0.0 && std::abs(std::sin(2.0 * mu0 * w)) < 1e-12;
    return SampledPotential(g, std::move(v), oracle,
                            "well(depth=" + std::to_string(depth) +
                                ",w=" + std::to_string(half_width) + ")");
}

SampledPotential make_gaussian(const Grid& g, double amplitude, double width) {
    if (!(width > 0)) throw input_error("make_gaussian: width must be > 0");
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double t = g[k] / width;
        v[k] = amplitude * std::exp(-t * t);
    }
    return SampledPotential(g, std::move(v), nullptr, "gaussian");
}

SampledPotential make_builtin(const std::string& name, const Grid& g,
                              double depth, double half_width) {
    if (name == "zero") return make_zero(g);
    if (name == "poschl-teller") return make_poschl_teller(g);
    if (name == "well") return make_square_well(g, depth, half_width);
    if (name == "gaussian") return make_gaussian(g, -depth, half_width);
    throw input_error("unknown builtin potential: " + name);
}

SampledPotential load_potential_csv(const std::string& path, const Grid& g) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open potential CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw input_error("empty potential CSV: " + path);
    std::vector<double> xs, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw input_error("potential CSV: expected two columns");
        double x = std::stod(a), v = std::stod(b);
        if (!std::isfinite(x) || !std::isfinite(v))
            throw input_error("potential CSV: non-finite entry");
        if (!xs.empty() && !(x > xs.back()))
            throw input_error("potential CSV: x must be strictly increasing");
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 4) throw input_error("potential CSV: too few rows");
    MonotoneCubic interp(xs, vs);
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double x = g[k];
        v[k] = (x < xs.front() || x > xs.back()) ? 0.0 : interp(x);
    }
    return SampledPotential(g, std::move(v), nullptr, "csv:" + path);
}

void save_potential_csv(const std::string& path, const SampledPotential& V) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write potential CSV: " + path);
    out << "x,V\n";
    out.precision(17);
    for (std::size_t k = 0; k < V.grid().size(); ++k)
        out << V.grid()[k] << "," << V.values()[k] << "\n";
}

} // namespace scat1d

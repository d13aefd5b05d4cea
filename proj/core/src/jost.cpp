#include "scat1d/jost.hpp"

#include <algorithm>
#include <cmath>

namespace scat1d {

namespace {

constexpr cplx I{0.0, 1.0};

// Combine suffix sums into int_x^inf D_lambda(t-x) V m dt.
// S1 = sum w V m e^{2 i l t}, S0 = sum w V m, St = sum w V m t.
cplx combine(cplx lambda, double x, cplx s0, cplx s1, cplx st) {
    if (lambda == cplx(0.0)) return st - x * s0; // D_0(u) = u
    return (std::exp(-2.0 * I * lambda * x) * s1 - s0) / (2.0 * I * lambda);
}

struct SuffixSums {
    cplx s0{0.0}, s1{0.0}, st{0.0};
    void add(double w, double v, cplx m, double t, cplx lambda) {
        cplx c = w * v * m;
        s0 += c;
        st += c * t;
        s1 += c * std::exp(2.0 * I * lambda * t);
    }
};

// Solve for m_+ on the given grid. The equation is marched from the right in
// panels whose local Volterra weight int (t-x)|V| stays below the budget;
// within a panel, Picard sweeps run until the sup change drops under tol.
MColumn solve_plus(const Grid& grid, const std::vector<double>& V,
                   std::size_t sup_hi, bool has_support, cplx lambda,
                   const VolterraOptions& opts) {
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    MColumn out;
    out.m.assign(n, cplx(1.0));
    out.dm.assign(n, cplx(0.0));
    if (!has_support) return out;

    auto node_weight = [&](std::size_t j) { return j == n - 1 ? 0.5 * h : h; };

    SuffixSums frozen;
    if (V[sup_hi] != 0.0)
        frozen.add(node_weight(sup_hi), V[sup_hi], out.m[sup_hi], grid[sup_hi], lambda);

    // march panels leftward from just below sup_hi
    std::size_t ib = sup_hi; // nodes >= ib are final
    std::vector<cplx> g, mcur, mnew;
    while (ib > 0) {
        // grow the panel while the local weight keeps Picard contracting
        std::size_t ia = ib;
        double a0 = 0.0, a1 = 0.0; // running int |V| and int t |V| over (x_ia, x_ib]
        while (ia > 0) {
            std::size_t cand = ia - 1;
            double a0c = a0 + h * std::abs(V[ia]);
            double a1c = a1 + h * std::abs(V[ia]) * grid[ia];
            // include V at the candidate node itself in the weight estimate
            double gloc = (a1c - grid[cand] * a0c) + 0.5 * h * h * std::abs(V[cand]);
            if (gloc > opts.panel_budget && ia != ib) break;
            ia = cand;
            a0 = a0c;
            a1 = a1c;
        }

        const std::size_t len = ib - ia;
        g.resize(len);
        mcur.resize(len);
        for (std::size_t i = ia; i < ib; ++i) {
            cplx gi = 1.0 + combine(lambda, grid[i], frozen.s0, frozen.s1, frozen.st);
            g[i - ia] = gi;
            mcur[i - ia] = gi / (1.0 - h * h * V[i] / 12.0);
        }

        double delta = 0.0;
        int sweep = 0;
        for (; sweep < opts.max_iter; ++sweep) {
            delta = 0.0;
            mnew.resize(len);
            SuffixSums local;
            for (std::size_t i = ib; i-- > ia;) {
                if (i + 1 < ib && V[i + 1] != 0.0)
                    local.add(h, V[i + 1], mcur[i + 1 - ia], grid[i + 1], lambda);
                cplx val = g[i - ia] + combine(lambda, grid[i], local.s0, local.s1, local.st);
                val /= (1.0 - h * h * V[i] / 12.0); // trapezoid endpoint correction
                mnew[i - ia] = val;
                delta = std::max(delta, std::abs(val - mcur[i - ia]));
            }
            mcur.swap(mnew);
            if (delta < opts.tol) break;
        }
        out.sweeps += sweep + 1;
        out.residual = delta;
        if (delta >= opts.tol)
            throw divergence_error("solve_m: Picard sweep did not reach tolerance", delta);

        for (std::size_t i = ia; i < ib; ++i) {
            out.m[i] = mcur[i - ia];
            if (V[i] != 0.0) frozen.add(h, V[i], out.m[i], grid[i], lambda);
        }
        ib = ia;
    }

    // derivative pass: dm(x) = -e^{-2 i l x} int_x^inf e^{2 i l t} V m dt,
    // with the same trapezoid endpoint correction.
    std::vector<cplx> vm(n);
    for (std::size_t j = 0; j < n; ++j) vm[j] = V[j] * out.m[j];
    cplx s1 = 0.0;
    for (std::size_t ii = n; ii-- > 0;) {
        cplx corr = 0.0; // centered difference of V m
        if (ii > 0 && ii + 1 < n) corr = (vm[ii + 1] - vm[ii - 1]) / (2.0 * h);
        cplx tail = std::abs(s1) > 0.0
                        ? std::exp(-2.0 * I * lambda * grid[ii]) * s1
                        : cplx(0.0);
        out.dm[ii] = -0.5 * h * vm[ii] - tail -
                     (h * h / 12.0) * (2.0 * I * lambda * vm[ii] + corr);
        if (V[ii] != 0.0)
            s1 += node_weight(ii) * vm[ii] * std::exp(2.0 * I * lambda * grid[ii]);
    }
    return out;
}

} // namespace

MColumn solve_m(const SampledPotential& V, cplx lambda, Side side,
                const VolterraOptions& opts) {
    if (!(opts.tol > 0)) throw input_error("solve_m: tol must be > 0");
    const Grid& grid = V.grid();
    const std::size_t n = grid.size();

    if (side == Side::plus) {
        return solve_plus(grid, V.values(), V.is_zero() ? 0 : V.support_hi(),
                          !V.is_zero(), lambda, opts);
    }
    // m_-(l, x; V) = m_+(l, -x; V(-.)): reflect, solve, reflect back.
    Grid rg(-grid.x_max(), -grid.x_min(), n);
    std::vector<double> rv(n);
    for (std::size_t j = 0; j < n; ++j) rv[j] = V.values()[n - 1 - j];
    std::size_t rhi = 0;
    bool has = !V.is_zero();
    if (has) rhi = n - 1 - V.support_lo();
    MColumn r = solve_plus(rg, rv, rhi, has, lambda, opts);
    MColumn out;
    out.m.resize(n);
    out.dm.resize(n);
    out.sweeps = r.sweeps;
    out.residual = r.residual;
    for (std::size_t j = 0; j < n; ++j) {
        out.m[j] = r.m[n - 1 - j];
        out.dm[j] = -r.dm[n - 1 - j];
    }
    return out;
}

std::size_t JostField::lambda_index_of(double lambda) const {
    for (std::size_t l = 0; l < lambda_grid.size(); ++l)
        if (std::abs(lambda_grid[l] - lambda) < 1e-12) return l;
    throw input_error("JostField: lambda not on grid");
}

std::size_t JostField::zero_index() const { return lambda_index_of(0.0); }

JostField solve_jost_field(const SampledPotential& V,
                           const std::vector<double>& lambda_grid,
                           const VolterraOptions& opts, int jobs) {
    JostField f;
    f.lambda_grid = lambda_grid;
    f.x_grid = V.grid();
    const std::size_t nl = lambda_grid.size(), nx = V.grid().size();
    f.m_plus = Array2D<cplx>(nl, nx);
    f.m_minus = Array2D<cplx>(nl, nx);
    f.dx_m_plus = Array2D<cplx>(nl, nx);
    f.dx_m_minus = Array2D<cplx>(nl, nx);

    parallel_for(nl, [&](std::size_t l) {
        MColumn p = solve_m(V, lambda_grid[l], Side::plus, opts);
        MColumn q = solve_m(V, lambda_grid[l], Side::minus, opts);
        std::copy(p.m.begin(), p.m.end(), f.m_plus.row(l));
        std::copy(p.dm.begin(), p.dm.end(), f.dx_m_plus.row(l));
        std::copy(q.m.begin(), q.m.end(), f.m_minus.row(l));
        std::copy(q.dm.begin(), q.dm.end(), f.dx_m_minus.row(l));
    }, jobs);

    compute_n(f);
    return f;
}

void compute_n(JostField& f) {
    const std::size_t nl = f.lambda_grid.size(), nx = f.x_grid.size();
    const std::size_t l0 = f.zero_index();
    f.n_plus = Array2D<cplx>(nl, nx);
    f.n_minus = Array2D<cplx>(nl, nx);
    for (std::size_t l = 0; l < nl; ++l) {
        if (l == l0) continue;
        double lam = f.lambda_grid[l];
        for (std::size_t j = 0; j < nx; ++j) {
            f.n_plus(l, j) = (f.m_plus(l, j) - f.m_plus(l0, j)) / lam;
            f.n_minus(l, j) = (f.m_minus(l, j) - f.m_minus(l0, j)) / lam;
        }
    }
    // symmetric difference quotient at lambda = 0
    if (l0 == 0 || l0 + 1 >= nl)
        throw input_error("compute_n: lambda = 0 must be interior to the grid");
    double dl = f.lambda_grid[l0 + 1] - f.lambda_grid[l0 - 1];
    for (std::size_t j = 0; j < nx; ++j) {
        f.n_plus(l0, j) = (f.m_plus(l0 + 1, j) - f.m_plus(l0 - 1, j)) / dl;
        f.n_minus(l0, j) = (f.m_minus(l0 + 1, j) - f.m_minus(l0 - 1, j)) / dl;
    }
}

std::vector<cplx> wronskian(const JostField& f) {
    const std::size_t j0 = f.x_grid.nearest(0.0);
    std::vector<cplx> w(f.lambda_grid.size());
    for (std::size_t l = 0; l < f.lambda_grid.size(); ++l) {
        cplx mp = f.m_plus(l, j0), mm = f.m_minus(l, j0);
        cplx dp = f.dx_m_plus(l, j0), dm = f.dx_m_minus(l, j0);
        w[l] = mp * dm - dp * mm - 2.0 * I * f.lambda_grid[l] * mp * mm;
    }
    return w;
}

ScatteringData detect_resonance(const JostField& f, const SampledPotential& V,
                                const ResonanceOptions& opts) {
    ScatteringData sd;
    sd.lambda_grid = f.lambda_grid;
    sd.wronskian = wronskian(f);
    const std::size_t l0 = f.zero_index();

    double sup_near = 0.0;
    for (std::size_t l = 0; l < f.lambda_grid.size(); ++l)
        if (std::abs(f.lambda_grid[l]) <= 1.0)
            sup_near = std::max(sup_near, std::abs(sd.wronskian[l]));
    double w0 = std::abs(sd.wronskian[l0]);
    double thr = opts.rel_tol * sup_near;
    sd.resonant = w0 < thr;
    sd.ambiguous = w0 > 0.5 * thr && w0 < 2.0 * thr;

    // int V m_pm(0, .) dy, which must vanish in the resonant case
    const std::size_t nx = f.x_grid.size();
    std::vector<cplx> fp(nx), fm(nx);
    for (std::size_t j = 0; j < nx; ++j) {
        fp[j] = V.values()[j] * f.m_plus(l0, j);
        fm[j] = V.values()[j] * f.m_minus(l0, j);
    }
    sd.media_plus = std::abs(trapezoid(f.x_grid, fp));
    sd.media_minus = std::abs(trapezoid(f.x_grid, fm));

    if (sd.resonant) {
        cplx num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < nx; ++j) {
            if (std::abs(f.x_grid[j]) > opts.c0_window) continue;
            num += f.m_minus(l0, j) * std::conj(f.m_plus(l0, j));
            den += f.m_plus(l0, j) * std::conj(f.m_plus(l0, j));
        }
        cplx c0 = num / den;
        sd.c0 = c0;
        double res = 0.0;
        for (std::size_t j = 0; j < nx; ++j) {
            if (std::abs(f.x_grid[j]) > opts.c0_window) continue;
            res = std::max(res, std::abs(f.m_minus(l0, j) - c0 * f.m_plus(l0, j)));
        }
        sd.c0_residual = res;
    }
    return sd;
}

double wronskian_at_ik(const SampledPotential& V, double kappa,
                       const VolterraOptions& opts) {
    if (!(kappa > 0)) throw input_error("wronskian_at_ik: kappa must be > 0");
    cplx lambda(0.0, kappa);
    MColumn p = solve_m(V, lambda, Side::plus, opts);
    MColumn q = solve_m(V, lambda, Side::minus, opts);
    std::size_t j0 = V.grid().nearest(0.0);
    cplx w = p.m[j0] * q.dm[j0] - p.dm[j0] * q.m[j0] - 2.0 * I * lambda * p.m[j0] * q.m[j0];
    return std::real(w);
}

std::vector<double> find_bound_states(const SampledPotential& V, double kappa_floor,
                                      const VolterraOptions& opts) {
    std::vector<double> energies;
    double vmin = 0.0;
    for (double v : V.values()) vmin = std::min(vmin, v);
    if (vmin >= 0.0) return energies;
    double kmax = std::sqrt(-vmin) * (1.0 + 1e-9);

    const int scan = 256;
    double prev_k = kappa_floor;
    double prev_w = wronskian_at_ik(V, prev_k, opts);
    for (int s = 1; s <= scan; ++s) {
        double k = kappa_floor + (kmax - kappa_floor) * double(s) / scan;
        double w = wronskian_at_ik(V, k, opts);
        if (prev_w * w < 0.0) {
            double a = prev_k, b = k, wa = prev_w;
            for (int it = 0; it < 64; ++it) {
                double mid = 0.5 * (a + b);
                double wm = wronskian_at_ik(V, mid, opts);
                if (wa * wm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    wa = wm;
                }
            }
            double kr = 0.5 * (a + b);
            energies.push_back(-kr * kr);
        }
        prev_k = k;
        prev_w = w;
    }
    std::sort(energies.begin(), energies.end());
    return energies;
}

ScatteringData build_scattering_data(const JostField& f, const SampledPotential& V,
                                     const ResonanceOptions& opts) {
    ScatteringData sd = detect_resonance(f, V, opts);
    sd.bound_state_energies = find_bound_states(V);
    return sd;
}

double msolve_residual(const JostField& f, const SampledPotential& V,
                       std::size_t l, Side side) {
    const double h = f.x_grid.spacing();
    const double lam = f.lambda_grid[l];
    const Array2D<cplx>& m = side == Side::plus ? f.m_plus : f.m_minus;
    const double sgn = side == Side::plus ? 1.0 : -1.0;
    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < f.x_grid.size(); ++j) {
        cplx d2 = (m(l, j + 1) - 2.0 * m(l, j) + m(l, j - 1)) / (h * h);
        cplx d1 = (m(l, j + 1) - m(l, j - 1)) / (2.0 * h);
        cplx r = d2 + sgn * 2.0 * I * lam * d1 - V.values()[j] * m(l, j);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

} // namespace scat1d

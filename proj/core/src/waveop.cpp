#include "scat1d/waveop.hpp"

#include <algorithm>
#include <cmath>

namespace scat1d {

namespace {
constexpr cplx I{0.0, 1.0};

double trap_weight(const std::vector<double>& grid, std::size_t q) {
    double dl = grid[1] - grid[0];
    return (q == 0 || q + 1 == grid.size()) ? 0.5 * dl : dl;
}

// cell-averaged K0 around the log singularity at 0
double k0_sample(double xi, double cell) {
    double a = std::abs(xi);
    if (a < 0.5 * cell) {
        double t = 0.5 * cell;
        return -std::log(0.5 * t) - 0.5772156649015329 + 1.0;
    }
    return std::cyl_bessel_k(0.0, a);
}
} // namespace

std::vector<double> make_lambda_grid(double lambda_max, std::size_t n_points) {
    if (n_points % 2 == 0) ++n_points; // keep 0 on the grid
    std::vector<double> l(n_points);
    double dl = 2.0 * lambda_max / double(n_points - 1);
    for (std::size_t k = 0; k < n_points; ++k) l[k] = -lambda_max + double(k) * dl;
    l[(n_points - 1) / 2] = 0.0;
    return l;
}

WaveOpConfig default_waveop_config(const SampledPotential& V, double lambda_max,
                                   std::size_t lambda_points) {
    WaveOpConfig cfg;
    cfg.cutoff = CutoffSpec(V.l1_norm());
    cfg.lambda_grid = make_lambda_grid(lambda_max, lambda_points);
    return cfg;
}

WaveOperator::WaveOperator(const SampledPotential& V, WaveOpConfig cfg,
                           WaveDirection dir, const VolterraOptions& volterra, int jobs)
    : V_(V), cfg_(std::move(cfg)), dir_(dir), grid_(V.grid()), jobs_(jobs) {
    if (cfg_.n_series < 2) throw input_error("WaveOperator: n_series must be >= 2");
    if (cfg_.lambda_grid.size() < 3) throw input_error("WaveOperator: lambda grid too small");

    const ResolventSign rs =
        dir_ == WaveDirection::plus ? ResolventSign::minus : ResolventSign::plus;

    // ---- high-energy series nodes -------------------------------------
    if (!V_.is_zero()) {
        std::vector<std::size_t> active;
        for (std::size_t q = 0; q < cfg_.lambda_grid.size(); ++q) {
            double lam = cfg_.lambda_grid[q];
            if (lam != 0.0 && cfg_.cutoff.phi_high(lam) > 1e-14) active.push_back(q);
        }
        series_nodes_.resize(active.size());
        parallel_for(active.size(), [&](std::size_t a) {
            std::size_t q = active[a];
            double lam = cfg_.lambda_grid[q];
            SeriesNode node;
            node.lambda = lam;
            node.weight = trap_weight(cfg_.lambda_grid, q) * cfg_.cutoff.phi_high(lam);
            ComplexSignal e(grid_);
            for (std::size_t k = 0; k < grid_.size(); ++k)
                e[k] = std::exp(I * lam * grid_[k]);
            ComplexSignal term = e;
            std::vector<cplx> hsum(grid_.size(), cplx(0.0));
            double sgn = 1.0;
            for (int n = 1; n <= cfg_.n_series; ++n) {
                ComplexSignal vin(grid_);
                for (std::size_t k = 0; k < grid_.size(); ++k)
                    vin[k] = V_.values()[k] * term[k];
                term = free_resolvent_apply(lam, rs, vin, 1e-12);
                sgn = -sgn;
                if (n == 1) {
                    node.h1 = term.values;
                } else {
                    for (std::size_t k = 0; k < grid_.size(); ++k)
                        hsum[k] += sgn * term[k];
                }
            }
            node.hsum = std::move(hsum);
            series_nodes_[a] = std::move(node);
        }, jobs_);

        // ---- regularized n = 1 multiplier table -----------------------
        // eta_A(l) = chi(l)/l = (chi_e(l)/l + chi_e(l)/|l|)/2; subtract
        // l/(1+l^2) and 1/sqrt(1+l^2), whose transforms are closed form,
        // and transform the smooth O(l^-3) remainder numerically.
        const double L = cfg_.k1_reg_L;
        const std::size_t nfft = 1 << 17;
        std::vector<double> lam_grid(nfft);
        std::vector<cplx> rho(nfft);
        double dl = 2.0 * L / double(nfft);
        for (std::size_t k = 0; k < nfft; ++k) {
            double lam = -L + (double(k) + 0.5) * dl;
            double chie = cfg_.cutoff.phi(lam * lam);
            double odd = chie / lam - lam / (1.0 + lam * lam);
            double even = chie / std::abs(lam) - 1.0 / std::sqrt(1.0 + lam * lam);
            lam_grid[k] = lam;
            rho[k] = 0.5 * (odd + even);
        }
        LineTransform tr = line_fourier(lam_grid, rho, 1);
        // line_fourier computes int e^{-i l xi}; rho is real, so the
        // e^{+i l xi} table is the conjugate at the same xi. Only the smooth
        // remainder is tabulated; the closed forms are added per sample.
        eta_xi_.resize(tr.xi.size());
        eta_hat_.resize(tr.xi.size());
        for (std::size_t k = 0; k < tr.xi.size(); ++k) {
            eta_xi_[k] = tr.xi[k];
            eta_hat_[k] = std::conj(tr.values[k]);
        }
    }

    // ---- low-energy quadrature nodes ----------------------------------
    if (!V_.is_zero()) {
        const double split = cfg_.cutoff.lambda_split();
        const double lmin = cfg_.lambda_quad.lambda_min;
        std::vector<double> nodes, weights;
        {
            std::vector<double> pn, pw;
            gauss_legendre(cfg_.lambda_quad.nodes_per_panel, 0.0, lmin, pn, pw);
            nodes.insert(nodes.end(), pn.begin(), pn.end());
            weights.insert(weights.end(), pw.begin(), pw.end());
            double a = lmin;
            double step = (split - lmin) / double(cfg_.lambda_quad.panels);
            for (int p = 0; p < cfg_.lambda_quad.panels; ++p) {
                gauss_legendre(cfg_.lambda_quad.nodes_per_panel, a, a + step, pn, pw);
                nodes.insert(nodes.end(), pn.begin(), pn.end());
                weights.insert(weights.end(), pw.begin(), pw.end());
                a += step;
            }
        }
        low_nodes_.resize(nodes.size());
        parallel_for(nodes.size(), [&](std::size_t q) {
            double lam = nodes[q];
            double lt = dir_ == WaveDirection::plus ? -lam : lam;
            MColumn p = solve_m(V_, lt, Side::plus, volterra);
            MColumn m = solve_m(V_, lt, Side::minus, volterra);
            LowNode node;
            node.lambda = lam;
            node.fp.resize(grid_.size());
            node.fm.resize(grid_.size());
            for (std::size_t k = 0; k < grid_.size(); ++k) {
                cplx e = std::exp(I * lt * grid_[k]);
                node.fp[k] = e * p.m[k];
                node.fm[k] = m.m[k] / e;
            }
            std::size_t j0 = grid_.nearest(0.0);
            cplx w = p.m[j0] * m.dm[j0] - p.dm[j0] * m.m[j0] -
                     2.0 * I * lt * p.m[j0] * m.m[j0];
            if (std::abs(w) < 1e-12)
                throw singularity_error("WaveOperator: |W| ~ 0 at a quadrature node");
            // lambda/W grouping keeps the resonant case regular near 0
            cplx lam_over_w = lam / w;
            node.coeff = cplx(2.0 / M_PI) * weights[q] *
                         cfg_.cutoff.phi_low(lam) * lam_over_w;
            low_nodes_[q] = std::move(node);
        }, jobs_);
    }
}

double WaveOperator::series_remainder_bound(double g_sup) const {
    double rem = 0.0;
    for (int n = cfg_.n_series + 1; n < cfg_.n_series + 200; ++n)
        rem += double(n) * double(n) * std::pow(0.5, n);
    return rem * V_.l1_norm() * g_sup / (2.0 * M_PI);
}

ComplexSignal WaveOperator::multiplier_synthesis(
    const ComplexSignal& g, const std::function<double(double)>& mult) const {
    const auto& lg = cfg_.lambda_grid;
    const std::size_t nq = lg.size(), nx = grid_.size();
    std::vector<cplx> coef(nq);
    parallel_for(nq, [&](std::size_t q) {
        double m = mult(lg[q]);
        coef[q] = m == 0.0 ? cplx(0.0)
                           : trap_weight(lg, q) * m * fourier_at(g, lg[q]);
    }, jobs_);
    ComplexSignal out(grid_);
    parallel_for(nx, [&](std::size_t k) {
        cplx acc = 0.0;
        double x = grid_[k];
        for (std::size_t q = 0; q < nq; ++q) {
            if (coef[q] == cplx(0.0)) continue;
            acc += coef[q] * std::exp(I * lg[q] * x);
        }
        out[k] = acc / (2.0 * M_PI);
    }, jobs_);
    return out;
}

ComplexSignal WaveOperator::series_apply(const ComplexSignal& g, FrequencyHalf half,
                                         bool adjoint, bool include_n1) const {
    ComplexSignal out(grid_);
    if (series_nodes_.empty()) return out;
    const std::size_t nx = grid_.size();
    std::vector<cplx> coef(series_nodes_.size(), cplx(0.0));
    parallel_for(series_nodes_.size(), [&](std::size_t a) {
        const SeriesNode& node = series_nodes_[a];
        bool pos = node.lambda > 0;
        if (half == FrequencyHalf::A && !pos) return;
        if (half == FrequencyHalf::B && pos) return;
        if (!adjoint) {
            coef[a] = node.weight * fourier_at(g, node.lambda);
        } else {
            // <h, zeta(lambda, .)> with trapezoid weights
            cplx acc = 0.0;
            for (std::size_t k = 0; k < nx; ++k) {
                cplx z = node.hsum[k];
                if (include_n1) z -= node.h1[k];
                double w = (k == 0 || k + 1 == nx) ? 0.5 : 1.0;
                acc += w * std::conj(z) * g[k];
            }
            coef[a] = node.weight * acc * grid_.spacing();
        }
    }, jobs_);

    parallel_for(nx, [&](std::size_t k) {
        cplx acc = 0.0;
        for (std::size_t a = 0; a < series_nodes_.size(); ++a) {
            if (coef[a] == cplx(0.0)) continue;
            const SeriesNode& node = series_nodes_[a];
            if (!adjoint) {
                cplx z = node.hsum[k];
                if (include_n1) z -= node.h1[k];
                acc += coef[a] * z;
            } else {
                acc += coef[a] * std::exp(I * node.lambda * grid_[k]);
            }
        }
        out[k] = acc / (2.0 * M_PI);
    }, jobs_);
    return out;
}

ComplexSignal WaveOperator::a1_contribution(const ComplexSignal& g,
                                            FrequencyHalf half) const {
    ComplexSignal out(grid_);
    if (V_.is_zero() || eta_hat_.empty()) return out;
    const std::size_t n = grid_.size();
    const double h = grid_.spacing();
    const double ds = dir_ == WaveDirection::minus ? 1.0 : -1.0;
    const cplx dirfac = dir_ == WaveDirection::minus ? I * 0.5 : -I * 0.5;

    // S(w_m) = int T(w_m - y) g(y) dy on the lattice w_m = xmin + m h,
    // m in [-(n-1), 2n-2]; tau = (m - j) h in [-(2n-2), 2n-2].
    const long mlo = -long(n) + 1, mhi = 2 * long(n) - 2;
    const long tlo = mlo - long(n) + 1, thi = mhi;
    const std::size_t ntau = std::size_t(thi - tlo + 1);
    const std::size_t nw = std::size_t(mhi - mlo + 1);

    std::vector<cplx> tsamp(ntau);
    for (std::size_t r = 0; r < ntau; ++r) {
        double tau = double(tlo + long(r)) * h;
        double sgn = tau > 0 ? 1.0 : (tau < 0 ? -1.0 : 0.0);
        cplx closed = 0.5 * (I * M_PI * sgn * std::exp(-std::abs(tau)) +
                             2.0 * k0_sample(tau, h));
        tsamp[r] = closed + lerp_table(eta_xi_, eta_hat_, tau);
    }

    std::vector<cplx> gw(n);
    for (std::size_t j = 0; j < n; ++j) {
        double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        gw[j] = w * h * g[j];
    }

    // linear convolution S_m = sum_j T[(m - j) - tlo] gw_j by FFT
    std::size_t fftn = 1;
    while (fftn < ntau + n) fftn <<= 1;
    auto convolve = [&](const std::vector<cplx>& kernel,
                        const std::vector<cplx>& sig) {
        std::vector<cplx> a(fftn, cplx(0.0)), b(fftn, cplx(0.0));
        std::copy(kernel.begin(), kernel.end(), a.begin());
        std::copy(sig.begin(), sig.end(), b.begin());
        fft(a, -1);
        fft(b, -1);
        for (std::size_t k = 0; k < fftn; ++k) a[k] *= b[k] / double(fftn);
        fft(a, +1);
        return a;
    };

    // S for the A half; the B half kernel is -conj(T_A)
    std::vector<cplx> SA, SB;
    if (half != FrequencyHalf::B) SA = convolve(tsamp, gw);
    if (half != FrequencyHalf::A) {
        std::vector<cplx> tb(ntau);
        for (std::size_t r = 0; r < ntau; ++r) tb[r] = -std::conj(tsamp[r]);
        SB = convolve(tb, gw);
    }
    auto s_at = [&](long m) -> cplx {
        std::size_t idx = std::size_t(m - tlo); // S_m sits at conv index m - tlo
        cplx v = 0.0;
        if (!SA.empty()) v += SA[idx];
        if (!SB.empty()) v += SB[idx];
        return v;
    };

    const std::size_t klo = V_.support_lo(), khi = V_.support_hi();
    parallel_for(n, [&](std::size_t j) {
        cplx acc = 0.0;
        for (std::size_t k = klo; k <= khi; ++k) {
            double v = V_.values()[k];
            if (v == 0.0) continue;
            double w = (k == 0 || k + 1 == n) ? 0.5 * h : h;
            // argument z + ds|x-z| lands on the lattice at j or 2k - j
            long m;
            if (ds > 0)
                m = long(j) >= long(k) ? long(j) : 2 * long(k) - long(j);
            else
                m = long(j) <= long(k) ? long(j) : 2 * long(k) - long(j);
            acc += w * v * s_at(m);
        }
        // contribution of the -A_1 series term, physical normalization
        out[j] = -dirfac * acc / (2.0 * M_PI);
    }, jobs_);
    return out;
}

ComplexSignal WaveOperator::low_correction(const ComplexSignal& g, bool adjoint) const {
    ComplexSignal out(grid_);
    if (low_nodes_.empty()) return out;
    const std::size_t n = grid_.size();
    const double h = grid_.spacing();

    std::vector<std::vector<cplx>> slots(low_nodes_.size());
    parallel_for(low_nodes_.size(), [&](std::size_t q) {
        const LowNode& node = low_nodes_[q];
        std::vector<cplx> work(n);
        if (!adjoint) {
            // K~ ( V Im R0 g ), kernel without 1/W (folded into coeff)
            ComplexSignal u = im_free_resolvent_apply(node.lambda, g);
            for (std::size_t k = 0; k < n; ++k) work[k] = V_.values()[k] * u[k];
            // prefix/suffix with fp, fm
            std::vector<cplx> a(n), b(n);
            for (std::size_t k = 0; k < n; ++k) {
                a[k] = node.fm[k] * work[k];
                b[k] = node.fp[k] * work[k];
            }
            std::vector<cplx> pre(n), suf(n);
            pre[0] = 0.0;
            for (std::size_t k = 1; k < n; ++k)
                pre[k] = pre[k - 1] + 0.5 * h * (a[k - 1] + a[k]);
            suf[n - 1] = 0.0;
            for (std::size_t k = n - 1; k > 0; --k)
                suf[k - 1] = suf[k] + 0.5 * h * (b[k - 1] + b[k]);
            std::vector<cplx> r(n);
            for (std::size_t k = 0; k < n; ++k)
                r[k] = -node.coeff * (node.fp[k] * pre[k] + node.fm[k] * suf[k]);
            slots[q] = std::move(r);
        } else {
            // adjoint: - conj(coeff) Im R0 ( V K~* h )
            std::vector<cplx> a(n), b(n);
            for (std::size_t k = 0; k < n; ++k) {
                a[k] = std::conj(node.fm[k]) * g[k];
                b[k] = std::conj(node.fp[k]) * g[k];
            }
            std::vector<cplx> pre(n), suf(n);
            pre[0] = 0.0;
            for (std::size_t k = 1; k < n; ++k)
                pre[k] = pre[k - 1] + 0.5 * h * (a[k - 1] + a[k]);
            suf[n - 1] = 0.0;
            for (std::size_t k = n - 1; k > 0; --k)
                suf[k - 1] = suf[k] + 0.5 * h * (b[k - 1] + b[k]);
            ComplexSignal kh(grid_);
            for (std::size_t k = 0; k < n; ++k)
                kh[k] = V_.values()[k] *
                        (std::conj(node.fp[k]) * pre[k] + std::conj(node.fm[k]) * suf[k]);
            ComplexSignal u = im_free_resolvent_apply(node.lambda, kh);
            std::vector<cplx> r(n);
            for (std::size_t k = 0; k < n; ++k) r[k] = -std::conj(node.coeff) * u[k];
            slots[q] = std::move(r);
        }
    }, jobs_);

    for (std::size_t q = 0; q < low_nodes_.size(); ++q)
        for (std::size_t k = 0; k < n; ++k) out[k] += slots[q][k];
    return out;
}

ComplexSignal WaveOperator::high_energy_apply(const ComplexSignal& g,
                                              FrequencyHalf half) const {
    auto mult = [&](double lam) -> double {
        double m = cfg_.cutoff.phi_high(lam);
        if (half == FrequencyHalf::A) return lam > 0 ? m : 0.0;
        if (half == FrequencyHalf::B) return lam < 0 ? m : 0.0;
        return m;
    };
    ComplexSignal out = multiplier_synthesis(g, mult);
    axpy(out, 1.0, series_apply(g, half, false, false));
    axpy(out, 1.0, a1_contribution(g, half));
    return out;
}

ComplexSignal WaveOperator::low_energy_apply(const ComplexSignal& g) const {
    auto mult = [&](double lam) { return cfg_.cutoff.phi_low(lam); };
    ComplexSignal out = multiplier_synthesis(g, mult);
    axpy(out, 1.0, low_correction(g, false));
    return out;
}

ComplexSignal WaveOperator::apply(const ComplexSignal& g) const {
    if (cfg_.series_tol > 0.0) {
        const double gs = sup_norm(g.values);
        if (series_remainder_bound(gs) > cfg_.series_tol) {
            double scale = V_.l1_norm() * gs / (2.0 * M_PI);
            int suggest = cfg_.n_series;
            double rem = series_remainder_bound(gs);
            while (suggest < 400 && rem > cfg_.series_tol) {
                ++suggest;
                rem -= double(suggest) * double(suggest) * std::pow(0.5, suggest) * scale;
            }
            throw truncation_error("WaveOperator: series remainder above tolerance",
                                   suggest);
        }
    }
    ComplexSignal out = multiplier_synthesis(g, [](double) { return 1.0; });
    axpy(out, 1.0, series_apply(g, FrequencyHalf::both, false, false));
    axpy(out, 1.0, a1_contribution(g, FrequencyHalf::both));
    axpy(out, 1.0, low_correction(g, false));
    return out;
}

ComplexSignal WaveOperator::apply_adjoint(const ComplexSignal& g) const {
    ComplexSignal out = multiplier_synthesis(g, [](double) { return 1.0; });
    axpy(out, 1.0, series_apply(g, FrequencyHalf::both, true, true));
    axpy(out, 1.0, low_correction(g, true));
    return out;
}

std::vector<double> WaveOperator::series_term_sups(const ComplexSignal& g) const {
    const std::size_t nx = grid_.size();
    std::vector<double> sups(std::size_t(cfg_.n_series) + 1, 0.0);
    // n = 0: the Phi_high multiplier piece
    auto m0 = multiplier_synthesis(g, [&](double lam) { return cfg_.cutoff.phi_high(lam); });
    sups[0] = sup_norm(m0.values);
    // n = 1 via the regularized multiplier route
    ComplexSignal a1 = a1_contribution(g, FrequencyHalf::both);
    sups[1] = sup_norm(a1.values);
    if (series_nodes_.empty()) return sups;

    const ResolventSign rs =
        dir_ == WaveDirection::plus ? ResolventSign::minus : ResolventSign::plus;
    std::vector<std::vector<cplx>> acc(std::size_t(cfg_.n_series) + 1,
                                       std::vector<cplx>(nx, cplx(0.0)));
    for (const SeriesNode& node : series_nodes_) {
        cplx c = node.weight * fourier_at(g, node.lambda);
        ComplexSignal term(grid_);
        for (std::size_t k = 0; k < nx; ++k)
            term[k] = std::exp(I * node.lambda * grid_[k]);
        for (int n = 1; n <= cfg_.n_series; ++n) {
            ComplexSignal vin(grid_);
            for (std::size_t k = 0; k < nx; ++k) vin[k] = V_.values()[k] * term[k];
            term = free_resolvent_apply(node.lambda, rs, vin, 1e-12);
            if (n >= 2)
                for (std::size_t k = 0; k < nx; ++k) acc[n][k] += c * term[k];
        }
    }
    for (int n = 2; n <= cfg_.n_series; ++n)
        sups[std::size_t(n)] = sup_norm(acc[std::size_t(n)]) / (2.0 * M_PI);
    return sups;
}

Array2D<cplx> WaveOperator::assemble_dense(int jobs) const {
    const std::size_t n = grid_.size();
    Array2D<cplx> M(n, n);
    parallel_for(n, [&](std::size_t j) {
        ComplexSignal e(grid_);
        e[j] = 1.0;
        ComplexSignal col = apply(e);
        for (std::size_t i = 0; i < n; ++i) M(i, j) = col[i];
    }, jobs > 0 ? jobs : jobs_);
    return M;
}

ComplexSignal wave_operator_apply(const WaveOperator& W, const ComplexSignal& g) {
    return W.apply(g);
}

ComplexSignal random_band_limited(const Grid& g, double band, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(-band, band);
    ComplexSignal out(g);
    const double span = g.x_max() - g.x_min();
    const double envw = 0.25 * span;
    for (int k = 0; k < 24; ++k) {
        double lam = uni(rng);
        cplx amp(gauss(rng), gauss(rng));
        for (std::size_t j = 0; j < g.size(); ++j)
            out[j] += amp * std::exp(cplx(0, lam * g[j]));
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
        double t = g[j] / envw;
        out[j] *= std::exp(-t * t);
    }
    return out;
}

ComplexSignal random_bump(const Grid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> cen(-0.3 * (g.x_max() - g.x_min()) / 2,
                                               0.3 * (g.x_max() - g.x_min()) / 2);
    std::uniform_real_distribution<double> wid(0.5, 3.0);
    ComplexSignal out(g);
    for (int k = 0; k < 3; ++k) {
        double c = cen(rng), w = wid(rng);
        cplx amp(gauss(rng), gauss(rng));
        for (std::size_t j = 0; j < g.size(); ++j) {
            double t = (g[j] - c) / w;
            out[j] += amp * std::exp(-t * t);
        }
    }
    return out;
}

ComplexSignal random_oscillatory(const Grid& g, double band, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.2, 0.8);
    std::uniform_real_distribution<double> cen(-5.0, 5.0);
    ComplexSignal out = random_bump(g, rng);
    double carrier = band * uni(rng);
    double chirp = 0.05 * band * uni(rng);
    double c = cen(rng);
    const double span = g.x_max() - g.x_min();
    for (std::size_t j = 0; j < g.size(); ++j) {
        double x = g[j] - c;
        double chirp_local = chirp * x;
        if (std::abs(carrier + chirp_local) > band) chirp_local = 0.0;
        out[j] *= std::exp(cplx(0, carrier * x + 0.5 * chirp_local * x));
        double t = g[j] / (0.25 * span);
        out[j] *= std::exp(-t * t);
    }
    return out;
}

LpProbeReport lp_bound_probe(const WaveOperator& W, double p, int n_samples,
                             std::uint64_t seed) {
    if (!(p > 1.0)) throw input_error("lp_bound_probe: p must be > 1");
    std::mt19937_64 rng(seed);
    LpProbeReport rep;
    rep.p = p;
    rep.n_samples = n_samples;
    const double band = 0.9 * std::abs(W.config().lambda_grid.back());
    double acc = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        ComplexSignal g;
        switch (s % 3) {
            case 0: g = random_band_limited(W.grid(), band, rng); break;
            case 1: g = random_bump(W.grid(), rng); break;
            default: g = random_oscillatory(W.grid(), band, rng); break;
        }
        double glp = lp_norm(W.grid(), g.values, p);
        if (glp == 0.0) continue;
        ComplexSignal wg = W.apply(g);
        double ratio = lp_norm(W.grid(), wg.values, p) / glp;
        rep.ratios.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        acc += ratio;
    }
    rep.mean_ratio = rep.ratios.empty() ? 0.0 : acc / double(rep.ratios.size());
    return rep;
}

EndpointProbeReport endpoint_probe(const WaveOperator& W, int n_samples,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EndpointProbeReport rep;
    rep.n_samples = n_samples;
    const double band = 0.9 * std::abs(W.config().lambda_grid.back());
    for (int s = 0; s < n_samples; ++s) {
        ComplexSignal g;
        switch (s % 3) {
            case 0: g = random_band_limited(W.grid(), band, rng); break;
            case 1: g = random_bump(W.grid(), rng); break;
            default: g = random_oscillatory(W.grid(), band, rng); break;
        }
        double gs = sup_norm(g.values);
        if (gs == 0.0) continue;
        HilbertResult hg = hilbert_transform(g);
        double hs = sup_norm(hg.signal.values);
        ComplexSignal wg = W.apply(g);
        double ratio = sup_norm(wg.values) / (gs + hs);
        rep.ratios.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    return rep;
}

} // namespace scat1d

#include "scat1d/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "scat1d/numerics.hpp"

namespace scat1d {

namespace {
constexpr cplx I{0.0, 1.0};

// signed tail integral int_x^inf V (plus side) or int_-inf^x V (minus side)
std::vector<double> signed_tail(const SampledPotential& V, Side side) {
    const std::size_t n = V.grid().size();
    const double h = V.grid().spacing();
    std::vector<double> t(n, 0.0);
    if (side == Side::plus) {
        for (std::size_t k = n - 1; k > 0; --k)
            t[k - 1] = t[k] + 0.5 * h * (V.values()[k - 1] + V.values()[k]);
    } else {
        for (std::size_t k = 1; k < n; ++k)
            t[k] = t[k - 1] + 0.5 * h * (V.values()[k - 1] + V.values()[k]);
    }
    return t;
}
} // namespace

KernelColumn b_from_fourier(const JostField& jost, const SampledPotential& V,
                            std::size_t x_index, Side side, double tail_tol) {
    const std::size_t nl = jost.lambda_grid.size();
    const Array2D<cplx>& m = side == Side::plus ? jost.m_plus : jost.m_minus;
    const double x = jost.x_grid[x_index];

    std::vector<double> tails = signed_tail(V, side);
    const double b0 = tails[x_index];
    const double vx = V.values()[x_index];
    const double b1 = 2.0 * b0 - vx + 0.5 * b0 * b0;

    // subtract the closed-form model transform in lambda
    std::vector<cplx> h(nl);
    double edge = 0.0;
    for (std::size_t l = 0; l < nl; ++l) {
        double lam = jost.lambda_grid[l];
        cplx model;
        if (side == Side::plus) {
            cplx d = 2.0 - 2.0 * I * lam;
            model = b0 / d + b1 / (d * d);
        } else {
            cplx d = 2.0 + 2.0 * I * lam;
            model = b0 / d + b1 / (d * d);
        }
        h[l] = (m(l, x_index) - 1.0) - model;
    }
    edge = std::max(std::abs(m(0, x_index) - 1.0), std::abs(m(nl - 1, x_index) - 1.0));

    LineTransform lt = line_fourier(jost.lambda_grid, h, 4);

    KernelColumn col;
    col.truncation_warning = edge > tail_tol;
    col.xi.resize(lt.xi.size());
    col.b.resize(lt.xi.size());
    double sup_re = 0.0, sup_im = 0.0, sup_off = 0.0;
    for (std::size_t k = 0; k < lt.xi.size(); ++k) {
        double xi = 0.5 * lt.xi[k]; // factor 2 folded into the output grid
        col.xi[k] = xi;
        double model = 0.0;
        if (side == Side::plus && xi > 0.0)
            model = (b0 + b1 * xi) * std::exp(-2.0 * xi);
        else if (side == Side::minus && xi < 0.0)
            model = (b0 - b1 * xi) * std::exp(2.0 * xi);
        cplx val = lt.values[k] / M_PI + model;
        col.b[k] = val.real();
        sup_re = std::max(sup_re, std::abs(val.real()));
        sup_im = std::max(sup_im, std::abs(val.imag()));
        bool off_side = side == Side::plus ? xi < -0.05 : xi > 0.05;
        if (off_side) sup_off = std::max(sup_off, std::abs(val));
    }
    col.imag_leak = sup_im / (1.0 + sup_re);
    col.support_leak = sup_re > 0.0 ? sup_off / sup_re : 0.0;
    return col;
}

Array2D<double> marchenko_field(const SampledPotential& V,
                                const std::vector<double>& x_samples,
                                const std::vector<double>& xi_grid,
                                double tol, int max_iter) {
    if (x_samples.empty() || xi_grid.size() < 2)
        throw input_error("marchenko_field: empty sample set");
    for (std::size_t k = 1; k < xi_grid.size(); ++k)
        if (!(xi_grid[k] > xi_grid[k - 1]))
            throw input_error("marchenko_field: xi grid must increase");
    if (xi_grid.front() < 0.0)
        throw input_error("marchenko_field: B_+ lives on xi >= 0");

    const Grid& g = V.grid();
    const double x_lo = *std::min_element(x_samples.begin(), x_samples.end());

    // coupled t-range: [x_lo, sup V]; contributions with t < x never enter
    std::vector<double> tv;     // t nodes
    std::vector<double> vt;     // V at t nodes
    if (!V.is_zero()) {
        std::size_t first = V.support_lo();
        if (x_lo > g[first]) {
            first = g.nearest(x_lo);
            if (g[first] > x_lo && first > 0) --first;
        }
        if (first <= V.support_hi())
            for (std::size_t j = first; j <= V.support_hi(); ++j) {
                tv.push_back(g[j]);
                vt.push_back(V.values()[j]);
            }
    }

    const std::size_t nxi = xi_grid.size();
    const std::size_t nt = tv.size();
    std::vector<double> full_tail = signed_tail(V, Side::plus);
    auto vtail_at = [&](double w) -> double {
        if (w <= g.x_min()) return full_tail.front();
        if (w >= g.x_max()) return 0.0;
        return lerp_table(g.points(), full_tail, w);
    };

    // B on the coupled rectangle, row per xi, column per t
    Array2D<double> B(nxi, std::max<std::size_t>(nt, 1), 0.0);
    for (std::size_t i = 0; i < nxi; ++i)
        for (std::size_t j = 0; j < nt; ++j) B(i, j) = vtail_at(tv[j] + xi_grid[i]);

    const double hz = xi_grid.size() > 1 ? xi_grid[1] - xi_grid[0] : 1.0;
    const double ht = nt > 1 ? tv[1] - tv[0] : 1.0;

    Array2D<double> Q(nxi, std::max<std::size_t>(nt, 1), 0.0); // suffix of V B per z row
    Array2D<double> Bn(nxi, std::max<std::size_t>(nt, 1), 0.0);
    double delta = 0.0;
    int sweep = 0;
    for (; sweep < max_iter && nt > 0; ++sweep) {
        // Q(z, w) = int_w^sup V(t) B(z, t) dt on the t nodes
        for (std::size_t i = 0; i < nxi; ++i) {
            double acc = 0.0;
            Q(i, nt - 1) = 0.0;
            for (std::size_t j = nt - 1; j > 0; --j) {
                acc += 0.5 * ht * (vt[j - 1] * B(i, j - 1) + vt[j] * B(i, j));
                Q(i, j - 1) = acc;
            }
        }
        auto q_at = [&](std::size_t i, double w) -> double {
            if (w <= tv.front()) return Q(i, 0);
            if (w >= tv.back()) return 0.0;
            double t = (w - tv.front()) / ht;
            std::size_t j = std::size_t(t);
            if (j + 1 >= nt) return Q(i, nt - 1);
            double fr = t - double(j);
            return Q(i, j) * (1.0 - fr) + Q(i, j + 1) * fr;
        };

        delta = 0.0;
        for (std::size_t i = 0; i < nxi; ++i) {
            for (std::size_t j = 0; j < nt; ++j) {
                double acc = vtail_at(tv[j] + xi_grid[i]);
                // int_0^xi Q_z(t + xi - z) dz, trapezoid in z
                for (std::size_t k = 0; k <= i; ++k) {
                    double wz = (k == 0 || k == i) ? 0.5 * hz : hz;
                    if (i == 0) wz = 0.0;
                    acc += wz * q_at(k, tv[j] + xi_grid[i] - xi_grid[k]);
                }
                Bn(i, j) = acc;
                delta = std::max(delta, std::abs(acc - B(i, j)));
            }
        }
        std::swap(B, Bn);
        if (delta < tol) break;
    }
    if (nt > 0 && delta >= tol)
        throw divergence_error("marchenko_solve: Picard did not converge", delta);

    // final rows at the requested samples (outside the coupled t-range the
    // same formula applies, reading the solved rectangle)
    if (nt > 0)
        for (std::size_t i = 0; i < nxi; ++i) {
            double acc = 0.0;
            Q(i, nt - 1) = 0.0;
            for (std::size_t j = nt - 1; j > 0; --j) {
                acc += 0.5 * ht * (vt[j - 1] * B(i, j - 1) + vt[j] * B(i, j));
                Q(i, j - 1) = acc;
            }
        }
    auto q_at = [&](std::size_t i, double w) -> double {
        if (nt == 0) return 0.0;
        if (w <= tv.front()) return Q(i, 0);
        if (w >= tv.back()) return 0.0;
        double t = (w - tv.front()) / ht;
        std::size_t j = std::size_t(t);
        if (j + 1 >= nt) return Q(i, nt - 1);
        double fr = t - double(j);
        return Q(i, j) * (1.0 - fr) + Q(i, j + 1) * fr;
    };

    Array2D<double> out(x_samples.size(), nxi, 0.0);
    for (std::size_t s = 0; s < x_samples.size(); ++s) {
        double xs = x_samples[s];
        for (std::size_t i = 0; i < nxi; ++i) {
            double acc = vtail_at(xs + xi_grid[i]);
            for (std::size_t k = 0; k <= i; ++k) {
                double wz = (k == 0 || k == i) ? 0.5 * hz : hz;
                if (i == 0) wz = 0.0;
                acc += wz * q_at(k, xs + xi_grid[i] - xi_grid[k]);
            }
            out(s, i) = acc;
        }
    }
    return out;
}

std::vector<double> marchenko_solve(const SampledPotential& V, double x,
                                    const std::vector<double>& xi_grid,
                                    double tol, int max_iter) {
    Array2D<double> f = marchenko_field(V, {x}, xi_grid, tol, max_iter);
    return f.row_copy(0);
}

KernelField build_kernel_field(const JostField& jost, const SampledPotential& V,
                               const std::vector<double>& x_samples, int jobs) {
    KernelField F;
    F.x_samples = x_samples;
    const std::size_t ns = x_samples.size();

    // probe one column for the xi grid
    KernelColumn probe = b_from_fourier(jost, V, jost.x_grid.nearest(x_samples[0]),
                                        Side::plus);
    F.xi_grid = probe.xi;
    const std::size_t nxi = F.xi_grid.size();
    F.B_plus = Array2D<double>(ns, nxi);
    F.B_minus = Array2D<double>(ns, nxi);
    F.C_plus = Array2D<cplx>(ns, nxi);
    F.C_minus = Array2D<cplx>(ns, nxi);
    F.C_tilde_plus = Array2D<cplx>(ns, nxi);
    F.C_tilde_minus = Array2D<cplx>(ns, nxi);
    F.l1_B_plus.assign(ns, 0.0);
    F.l1_B_minus.assign(ns, 0.0);
    F.l1_C_plus.assign(ns, 0.0);
    F.l1_C_minus.assign(ns, 0.0);
    F.l1_Ct_plus.assign(ns, 0.0);
    F.l1_Ct_minus.assign(ns, 0.0);

    const double dxi = F.xi_grid[1] - F.xi_grid[0];
    std::vector<double> leak_p(ns, 0.0), leak_m(ns, 0.0);

    parallel_for(ns, [&](std::size_t s) {
        std::size_t jx = jost.x_grid.nearest(x_samples[s]);
        KernelColumn bp = b_from_fourier(jost, V, jx, Side::plus);
        KernelColumn bm = b_from_fourier(jost, V, jx, Side::minus);
        leak_p[s] = bp.support_leak;
        leak_m[s] = bm.support_leak;

        // C~ = transform of n with its own 1/lambda model subtracted
        const std::size_t nl = jost.lambda_grid.size();
        std::vector<cplx> hp(nl), hm(nl);
        cplx m0p = jost.m_plus(jost.zero_index(), jx);
        cplx m0m = jost.m_minus(jost.zero_index(), jx);
        for (std::size_t l = 0; l < nl; ++l) {
            double lam = jost.lambda_grid[l];
            cplx mdl_p = (1.0 - m0p) * lam / (1.0 + lam * lam);
            cplx mdl_m = (1.0 - m0m) * lam / (1.0 + lam * lam);
            hp[l] = jost.n_plus(l, jx) - mdl_p;
            hm[l] = jost.n_minus(l, jx) - mdl_m;
        }
        LineTransform tp = line_fourier(jost.lambda_grid, hp, 4);
        LineTransform tm = line_fourier(jost.lambda_grid, hm, 4);

        for (std::size_t k = 0; k < nxi; ++k) {
            double xi = F.xi_grid[k];
            F.B_plus(s, k) = bp.b[k];
            F.B_minus(s, k) = bm.b[k];
            F.C_plus(s, k) = 2.0 * I * xi * bp.b[k];
            F.C_minus(s, k) = 2.0 * I * xi * bm.b[k];
            // model transform: -i c sgn(xi) e^{-2|xi|} with c = 1 - m(0,x)
            cplx mp = -I * (1.0 - m0p) * (xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0)) *
                      std::exp(-2.0 * std::abs(xi));
            cplx mm = -I * (1.0 - m0m) * (xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0)) *
                      std::exp(-2.0 * std::abs(xi));
            F.C_tilde_plus(s, k) = tp.values[k] / M_PI + mp;
            F.C_tilde_minus(s, k) = tm.values[k] / M_PI + mm;
        }
        double nbp = 0, nbm = 0, ncp = 0, ncm = 0, ntp = 0, ntm = 0;
        for (std::size_t k = 0; k < nxi; ++k) {
            nbp += std::abs(F.B_plus(s, k));
            nbm += std::abs(F.B_minus(s, k));
            ncp += std::abs(F.C_plus(s, k));
            ncm += std::abs(F.C_minus(s, k));
            ntp += std::abs(F.C_tilde_plus(s, k));
            ntm += std::abs(F.C_tilde_minus(s, k));
        }
        F.l1_B_plus[s] = nbp * dxi;
        F.l1_B_minus[s] = nbm * dxi;
        F.l1_C_plus[s] = ncp * dxi;
        F.l1_C_minus[s] = ncm * dxi;
        F.l1_Ct_plus[s] = ntp * dxi;
        F.l1_Ct_minus[s] = ntm * dxi;
    }, jobs);

    F.support_leak_plus = *std::max_element(leak_p.begin(), leak_p.end());
    F.support_leak_minus = *std::max_element(leak_m.begin(), leak_m.end());
    return F;
}

GrowthTable growth_table(const KernelField& field, KernelKind which, Side side,
                         double window_lo, double window_hi) {
    GrowthTable tab;
    tab.which = which;
    tab.side = side;
    const std::vector<double>* norms = nullptr;
    switch (which) {
        case KernelKind::B:
            norms = side == Side::plus ? &field.l1_B_plus : &field.l1_B_minus;
            break;
        case KernelKind::C:
            norms = side == Side::plus ? &field.l1_C_plus : &field.l1_C_minus;
            break;
        case KernelKind::C_tilde:
            norms = side == Side::plus ? &field.l1_Ct_plus : &field.l1_Ct_minus;
            break;
    }

    std::vector<double> lx, ln;
    for (std::size_t s = 0; s < field.x_samples.size(); ++s) {
        double x = field.x_samples[s];
        GrowthRow row;
        row.x = x;
        row.norm = (*norms)[s];
        tab.rows.push_back(row);
        bool unfavorable = side == Side::plus ? x < 0 : x > 0;
        double ax = std::abs(x);
        if (unfavorable && ax >= window_lo && ax <= window_hi && row.norm > 0) {
            lx.push_back(std::log(std::sqrt(1.0 + x * x)));
            ln.push_back(std::log(row.norm));
        }
    }
    if (lx.size() < 4)
        throw precondition_error("growth_table: fewer than 4 points on the fit side");
    LineFit fit = fit_line(lx, ln);
    tab.fitted_exponent = fit.slope;
    tab.fit_intercept = fit.intercept;
    tab.fit_count = lx.size();
    for (auto& row : tab.rows) {
        double lxx = std::log(std::sqrt(1.0 + row.x * row.x));
        row.envelope = std::exp(fit.intercept + fit.slope * lxx);
    }
    return tab;
}

double wiener_quotient_norm(const ScatteringData& sd, const CutoffSpec& cutoff,
                            WienerMode mode) {
    if (mode == WienerMode::inverse_W && sd.resonant)
        throw precondition_error("wiener_quotient_norm: 1/W is singular in the resonant case");
    if (mode == WienerMode::lambda_over_W && !sd.resonant)
        throw precondition_error("wiener_quotient_norm: lambda/W mode expects a resonance");

    const std::size_t nl = sd.lambda_grid.size();
    std::vector<cplx> h(nl);
    for (std::size_t l = 0; l < nl; ++l) {
        double lam = sd.lambda_grid[l];
        double chi = cutoff.phi_low(lam);
        if (mode == WienerMode::inverse_W) {
            h[l] = chi / sd.wronskian[l];
        } else {
            if (lam == 0.0) {
                h[l] = 0.0; // patched below by continuity
            } else {
                h[l] = chi * lam / sd.wronskian[l];
            }
        }
    }
    if (mode == WienerMode::lambda_over_W) {
        for (std::size_t l = 1; l + 1 < nl; ++l)
            if (sd.lambda_grid[l] == 0.0) h[l] = 0.5 * (h[l - 1] + h[l + 1]);
    }
    LineTransform lt = line_fourier(sd.lambda_grid, h, 4);
    double dxi = lt.xi[1] - lt.xi[0];
    double acc = 0.0;
    for (const auto& v : lt.values) acc += std::abs(v);
    return acc * dxi;
}

HilbertResult hilbert_transform(const ComplexSignal& g, double tail_tol,
                                double taper_fraction) {
    HilbertResult res;
    double sup = sup_norm(g.values);
    double bnd = std::max(std::abs(g.values.front()), std::abs(g.values.back()));
    res.boundary_level = sup > 0 ? bnd / sup : 0.0;
    res.boundary_warning = res.boundary_level > tail_tol;

    ComplexSignal tapered = g;
    const std::size_t n = g.size();
    const std::size_t margin = std::size_t(double(n) * taper_fraction);
    for (std::size_t k = 0; k < margin; ++k) {
        double w = 0.5 * (1.0 - std::cos(M_PI * double(k) / double(margin)));
        tapered[k] *= w;
        tapered[n - 1 - k] *= w;
    }
    res.signal = apply_multiplier(tapered, [](double lam) -> cplx {
        if (lam > 0) return cplx(0, -1);
        if (lam < 0) return cplx(0, 1);
        return cplx(0, 0);
    });
    return res;
}

} // namespace scat1d

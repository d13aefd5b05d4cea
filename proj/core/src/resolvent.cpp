#include "scat1d/resolvent.hpp"

#include <algorithm>
#include <cmath>

namespace scat1d {

namespace {
constexpr cplx I{0.0, 1.0};

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}
} // namespace

CutoffSpec::CutoffSpec(double lambda0, double mu0_override) : lambda0_(lambda0) {
    if (!(lambda0 >= 0) || !std::isfinite(lambda0))
        throw input_error("CutoffSpec: bad lambda0");
    mu0_ = mu0_override > 0 ? mu0_override : std::max(lambda0_, lambda0_ * lambda0_);
    if (mu0_ <= 0) mu0_ = 1.0; // V == 0: any positive split works
}

double CutoffSpec::phi(double mu) const { return smoothstep(mu - mu0_); }

double CutoffSpec::psi(double lambda) const {
    double edge = lambda_split();
    double a = std::abs(lambda);
    if (a <= edge) return 1.0;
    return 1.0 - smoothstep(a - edge);
}

double CutoffSpec::lambda_split() const { return std::sqrt(mu0_ + 1.0); }

ComplexSignal free_resolvent_apply(double lambda, ResolventSign sign,
                                   const ComplexSignal& f, double lambda_min) {
    if (std::abs(lambda) < lambda_min)
        throw singularity_error("free_resolvent_apply: |lambda| below lambda_min");
    const Grid& g = f.grid;
    const std::size_t n = g.size();
    const double h = g.spacing();
    const double s = sign == ResolventSign::plus ? 1.0 : -1.0;
    // kernel (s i / 2 lambda) e^{s i lambda |x-y|}, split by y < x / y > x into
    // prefix and suffix sums of e^{-s i lambda y} f and e^{s i lambda y} f.
    std::vector<cplx> em(n), ep(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx e = std::exp(I * s * lambda * g[k]);
        ep[k] = e * f[k];
        em[k] = f[k] / e;
    }
    // prefix: int_{xmin}^{x} em, suffix: int_x^{xmax} ep (trapezoid)
    std::vector<cplx> pre(n), suf(n);
    pre[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) pre[k] = pre[k - 1] + 0.5 * h * (em[k - 1] + em[k]);
    suf[n - 1] = 0.0;
    for (std::size_t k = n - 1; k > 0; --k) suf[k - 1] = suf[k] + 0.5 * h * (ep[k - 1] + ep[k]);
    ComplexSignal out(g);
    const cplx c = s * I / (2.0 * lambda);
    for (std::size_t k = 0; k < n; ++k) {
        cplx e = std::exp(I * s * lambda * g[k]);
        out[k] = c * (e * pre[k] + suf[k] / e);
    }
    return out;
}

ComplexSignal im_free_resolvent_apply(double lambda, const ComplexSignal& f) {
    if (lambda == 0.0)
        throw singularity_error("im_free_resolvent_apply: lambda = 0");
    // cos(l(x-y)) = cos lx cos ly + sin lx sin ly: rank two
    const Grid& g = f.grid;
    const std::size_t n = g.size();
    std::vector<cplx> fc(n), fs(n);
    for (std::size_t k = 0; k < n; ++k) {
        fc[k] = std::cos(lambda * g[k]) * f[k];
        fs[k] = std::sin(lambda * g[k]) * f[k];
    }
    cplx ic = trapezoid(g, fc), is = trapezoid(g, fs);
    ComplexSignal out(g);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = (std::cos(lambda * g[k]) * ic + std::sin(lambda * g[k]) * is) /
                 (2.0 * lambda);
    return out;
}

ComplexSignal free_resolvent_complex(cplx z, const ComplexSignal& f) {
    cplx k = std::sqrt(z);
    if (k.imag() < 0.0) k = -k;
    if (std::abs(k) == 0.0) throw singularity_error("free_resolvent_complex: z = 0");
    const Grid& g = f.grid;
    const std::size_t n = g.size();
    const double h = g.spacing();
    std::vector<cplx> em(n), ep(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx e = std::exp(I * k * g[j]);
        ep[j] = e * f[j];
        em[j] = f[j] / e;
    }
    std::vector<cplx> pre(n), suf(n);
    pre[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j) pre[j] = pre[j - 1] + 0.5 * h * (em[j - 1] + em[j]);
    suf[n - 1] = 0.0;
    for (std::size_t j = n - 1; j > 0; --j) suf[j - 1] = suf[j] + 0.5 * h * (ep[j - 1] + ep[j]);
    ComplexSignal out(g);
    const cplx c = I / (2.0 * k);
    for (std::size_t j = 0; j < n; ++j) {
        cplx e = std::exp(I * k * g[j]);
        out[j] = c * (e * pre[j] + suf[j] / e);
    }
    return out;
}

PerturbedResolvent::PerturbedResolvent(const SampledPotential& V, double lambda,
                                       ResolventSign sign, const VolterraOptions& opts)
    : grid_(V.grid()), lambda_(lambda) {
    if (lambda == 0.0) throw singularity_error("PerturbedResolvent: lambda = 0");
    const double lt = sign == ResolventSign::plus ? lambda : -lambda;
    MColumn p = solve_m(V, lt, Side::plus, opts);
    MColumn q = solve_m(V, lt, Side::minus, opts);
    const std::size_t n = grid_.size();
    const std::size_t j0 = grid_.nearest(0.0);
    fp_.resize(n);
    fm_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx e = std::exp(I * lt * grid_[j]);
        fp_[j] = e * p.m[j];
        fm_[j] = q.m[j] / e;
    }
    w_ = p.m[j0] * q.dm[j0] - p.dm[j0] * q.m[j0] - 2.0 * I * lt * p.m[j0] * q.m[j0];
    if (std::abs(w_) < 1e-10)
        throw singularity_error("PerturbedResolvent: |W| too small at this lambda");
}

ComplexSignal PerturbedResolvent::apply(const ComplexSignal& w) const {
    if (!(w.grid == grid_)) throw input_error("PerturbedResolvent: grid mismatch");
    const std::size_t n = grid_.size();
    const double h = grid_.spacing();
    std::vector<cplx> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = fm_[j] * w[j];
        b[j] = fp_[j] * w[j];
    }
    std::vector<cplx> pre(n), suf(n);
    pre[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j) pre[j] = pre[j - 1] + 0.5 * h * (a[j - 1] + a[j]);
    suf[n - 1] = 0.0;
    for (std::size_t j = n - 1; j > 0; --j) suf[j - 1] = suf[j] + 0.5 * h * (b[j - 1] + b[j]);
    ComplexSignal out(grid_);
    for (std::size_t j = 0; j < n; ++j) out[j] = (fp_[j] * pre[j] + fm_[j] * suf[j]) / w_;
    return out;
}

ComplexSignal PerturbedResolvent::apply_adjoint(const ComplexSignal& w) const {
    // kernel is symmetric, so the adjoint is the conjugate kernel
    ComplexSignal wc = w;
    for (auto& v : wc.values) v = std::conj(v);
    ComplexSignal r = apply(wc);
    for (auto& v : r.values) v = std::conj(v);
    return r;
}

cplx PerturbedResolvent::kernel(std::size_t i, std::size_t j) const {
    std::size_t hi = std::max(i, j), lo = std::min(i, j);
    return fp_[hi] * fm_[lo] / w_;
}

BornResult eigenfunction_born(const SampledPotential& V, double lambda,
                              ResolventSign sign, const Grid& g, int n_terms) {
    const double lambda0 = V.l1_norm();
    if (std::abs(lambda) < lambda0)
        throw precondition_error("eigenfunction_born: |lambda| below ||V||_L1");
    if (std::abs(lambda) < 1e-12)
        throw singularity_error("eigenfunction_born: lambda = 0");
    // W_+ pairs with R_0(lambda^2 - i0), W_- with +i0
    ResolventSign rs = sign;
    SampledPotential Vg = V.grid() == g ? V : V.resampled(g);
    ComplexSignal term(g);
    for (std::size_t k = 0; k < g.size(); ++k) term[k] = std::exp(I * lambda * g[k]);
    BornResult res;
    res.phi = term;
    double contraction = Vg.l1_norm() / (2.0 * std::abs(lambda));
    for (int n = 1; n <= n_terms; ++n) {
        ComplexSignal vin(g);
        for (std::size_t k = 0; k < g.size(); ++k) vin[k] = Vg.values()[k] * term[k];
        term = free_resolvent_apply(lambda, rs, vin, 1e-12);
        for (auto& v : term.values) v = -v;
        axpy(res.phi, 1.0, term);
    }
    res.last_term_sup = sup_norm(term.values);
    // geometric tail with ratio <= ||V||/2|lambda|
    res.tail_bound = contraction < 1.0
                         ? res.last_term_sup * contraction / (1.0 - contraction)
                         : std::numeric_limits<double>::infinity();
    return res;
}

ComplexSignal eigenfunction_low(const SampledPotential& V, double lambda,
                                ResolventSign sign, const Grid& g,
                                const VolterraOptions& opts) {
    SampledPotential Vg = V.grid() == g ? V : V.resampled(g);
    PerturbedResolvent rv(Vg, lambda, sign == ResolventSign::plus ? ResolventSign::plus
                                                                  : ResolventSign::minus,
                          opts);
    ComplexSignal e(g);
    for (std::size_t k = 0; k < g.size(); ++k) e[k] = std::exp(I * lambda * g[k]);
    ComplexSignal ve(g);
    for (std::size_t k = 0; k < g.size(); ++k) ve[k] = Vg.values()[k] * e[k];
    ComplexSignal corr = rv.apply(ve);
    ComplexSignal out = e;
    axpy(out, -1.0, corr);
    return out;
}

EigenfunctionField build_eigenfunctions(const SampledPotential& V,
                                        const std::vector<double>& lambda_grid,
                                        ResolventSign sign, double lambda_min,
                                        int born_terms, int jobs) {
    EigenfunctionField F;
    F.lambda_grid = lambda_grid;
    F.x_grid = V.grid();
    F.phi = Array2D<cplx>(lambda_grid.size(), V.grid().size());
    const double lambda0 = V.l1_norm();
    parallel_for(lambda_grid.size(), [&](std::size_t l) {
        double lam = lambda_grid[l];
        ComplexSignal col;
        if (V.is_zero()) {
            col = ComplexSignal(V.grid());
            for (std::size_t k = 0; k < col.size(); ++k)
                col[k] = std::exp(I * lam * V.grid()[k]);
        } else if (std::abs(lam) < lambda_min) {
            // continuous surrogate at the lambda_min edge
            ComplexSignal a = eigenfunction_low(V, lambda_min, sign, V.grid());
            ComplexSignal b = eigenfunction_low(V, -lambda_min, sign, V.grid());
            col = ComplexSignal(V.grid());
            for (std::size_t k = 0; k < col.size(); ++k) col[k] = 0.5 * (a[k] + b[k]);
        } else if (std::abs(lam) >= lambda0) {
            col = eigenfunction_born(V, lam, sign, V.grid(), born_terms).phi;
        } else {
            col = eigenfunction_low(V, lam, sign, V.grid());
        }
        std::copy(col.values.begin(), col.values.end(), F.phi.row(l));
    }, jobs);
    return F;
}

double eigenfunction_residual(const EigenfunctionField& F, const SampledPotential& V,
                              std::size_t l) {
    const double h = F.x_grid.spacing();
    const double lam = F.lambda_grid[l];
    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < F.x_grid.size(); ++j) {
        cplx d2 = (F.phi(l, j + 1) - 2.0 * F.phi(l, j) + F.phi(l, j - 1)) / (h * h);
        cplx r = -d2 + V.values()[j] * F.phi(l, j) - lam * lam * F.phi(l, j);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

} // namespace scat1d

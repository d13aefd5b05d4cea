#pragma once

#include <functional>
#include <vector>

#include "scat1d/jost.hpp"

namespace scat1d {

enum class ResolventSign { plus, minus }; // boundary value lambda^2 +- i0

/// Smooth high/low energy partition. phi_high(l) = Phi(l^2) vanishes for
/// l^2 <= mu0 and equals 1 for l^2 >= mu0 + 1; phi_low = 1 - phi_high
/// exactly. The split point mu0 defaults to max(lambda0, lambda0^2) so that
/// the Born series is contracting (|l| >= lambda0 = ||V||_L1) everywhere the
/// high-energy part is active.
class CutoffSpec {
  public:
    CutoffSpec() = default;
    explicit CutoffSpec(double lambda0, double mu0_override = -1.0);

    double lambda0() const { return lambda0_; }
    double mu0() const { return mu0_; }

    double phi(double mu) const;                 // Phi on the energy axis
    double phi_high(double lambda) const { return phi(lambda * lambda); }
    double phi_low(double lambda) const { return 1.0 - phi_high(lambda); }
    /// Auxiliary cutoff: 1 on supp(phi_low), smooth drop over one unit.
    double psi(double lambda) const;

    /// Upper edge of supp(phi_low) in lambda: sqrt(mu0 + 1).
    double lambda_split() const;

  private:
    double lambda0_ = 1.0;
    double mu0_ = 1.0;
};

/// (R_0(lambda^2 +- i0) f)(x) = (+-i/2lambda) int e^{+-i lambda |x-y|} f(y) dy.
/// The constant is pinned by (-d^2/dx^2 - lambda^2) R_0 f = f.
ComplexSignal free_resolvent_apply(double lambda, ResolventSign sign,
                                   const ComplexSignal& f, double lambda_min = 1e-3);

/// Im R_0(lambda^2 + i0), kernel cos(lambda(x-y))/(2 lambda); rank-two fast path.
ComplexSignal im_free_resolvent_apply(double lambda, const ComplexSignal& f);

/// R_0(z) for complex z off the positive axis (limiting-absorption checks).
ComplexSignal free_resolvent_complex(cplx z, const ComplexSignal& f);

/// Perturbed resolvent R_V(lambda^2 +- i0) realized through the Jost kernel
///   K(x, y) = f_+(l~, max) f_-(l~, min) / W(l~),   l~ = +-lambda.
/// Column data are solved once per (lambda, sign); applications cost O(n).
class PerturbedResolvent {
  public:
    PerturbedResolvent(const SampledPotential& V, double lambda, ResolventSign sign,
                       const VolterraOptions& opts = {});

    ComplexSignal apply(const ComplexSignal& w) const;
    ComplexSignal apply_adjoint(const ComplexSignal& w) const;
    cplx kernel(std::size_t i, std::size_t j) const;
    cplx wronskian_value() const { return w_; }
    double lambda() const { return lambda_; }

    const std::vector<cplx>& f_plus() const { return fp_; }
    const std::vector<cplx>& f_minus() const { return fm_; }

  private:
    Grid grid_;
    double lambda_;
    std::vector<cplx> fp_, fm_; // f_pm(l~, .)
    cplx w_;
};

struct BornResult {
    ComplexSignal phi;
    double tail_bound = 0.0;    // sup bound on the truncated remainder
    double last_term_sup = 0.0; // sup of the final series term
};

/// Born series phi = sum_n (-1)^n (R_0(lambda^2 -+ i0) V)^n e^{i lambda x}
/// on the contraction range |lambda| >= ||V||_L1. `sign` picks the boundary
/// value (minus for W_+, plus for W_-).
BornResult eigenfunction_born(const SampledPotential& V, double lambda,
                              ResolventSign sign, const Grid& g, int n_terms = 30);

/// phi = e^{i lambda .} - R_V(lambda^2 -+ i0) V e^{i lambda .} via the Jost
/// kernel; agrees with the Born series on the overlap.
ComplexSignal eigenfunction_low(const SampledPotential& V, double lambda,
                                ResolventSign sign, const Grid& g,
                                const VolterraOptions& opts = {});

/// Generalized eigenfunctions phi(lambda, x) over a lambda grid.
struct EigenfunctionField {
    std::vector<double> lambda_grid;
    Grid x_grid;
    Array2D<cplx> phi;
};

/// Build the field with the Born route on |lambda| >= lambda0 and the Jost
/// route below; |lambda| < lambda_min is evaluated at the lambda_min sided
/// surrogate (the field is continuous across 0).
EigenfunctionField build_eigenfunctions(const SampledPotential& V,
                                        const std::vector<double>& lambda_grid,
                                        ResolventSign sign,
                                        double lambda_min = 1e-3, int born_terms = 30,
                                        int jobs = 0);

/// Max interior residual of -phi'' + V phi - lambda^2 phi for one row.
double eigenfunction_residual(const EigenfunctionField& F, const SampledPotential& V,
                              std::size_t lambda_index);

} // namespace scat1d

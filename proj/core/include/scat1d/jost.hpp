#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scat1d/numerics.hpp"
#include "scat1d/potential.hpp"

namespace scat1d {

enum class Side { plus, minus };

struct VolterraOptions {
    double tol = 1e-10;       // sup-norm change between Picard sweeps
    int max_iter = 200;       // sweeps per panel before divergence-error
    double panel_budget = 0.5; // local Volterra weight per marching panel
};

/// One solved column m(lambda, .), its x-derivative, and solver diagnostics.
struct MColumn {
    std::vector<cplx> m;
    std::vector<cplx> dm;
    int sweeps = 0;       // total Picard sweeps over all panels
    double residual = 0.0; // last sup-norm change
};

/// Solve the Volterra equation for the modified Jost function on V's grid.
/// side == plus marches from x_max (m -> 1 there), side == minus is the
/// mirrored recursion. lambda may be complex (upper half plane) for
/// bound-state work.
MColumn solve_m(const SampledPotential& V, cplx lambda, Side side,
                const VolterraOptions& opts = {});

/// m_pm, their x-derivatives, and the difference quotients n_pm on a
/// frequency x space grid.
struct JostField {
    std::vector<double> lambda_grid;
    Grid x_grid;
    Array2D<cplx> m_plus, m_minus, dx_m_plus, dx_m_minus;
    Array2D<cplx> n_plus, n_minus;

    std::size_t lambda_index_of(double lambda) const;
    std::size_t zero_index() const; // throws input_error when 0 is absent
};

/// Solve both sides over the whole lambda grid (parallel over lambda),
/// then fill the n_pm arrays.
JostField solve_jost_field(const SampledPotential& V,
                           const std::vector<double>& lambda_grid,
                           const VolterraOptions& opts = {}, int jobs = 0);

/// n_pm(lambda, x) = (m(lambda,x) - m(0,x))/lambda, symmetric difference
/// quotient at lambda = 0. Requires 0 in the lambda grid.
void compute_n(JostField& jost);

/// W(lambda) = m_+ dx m_- - dx m_+ m_- - 2 i lambda m_+ m_-, evaluated at the
/// node nearest x = 0 (the expression is x-independent up to discretization).
std::vector<cplx> wronskian(const JostField& jost);

struct ScatteringData {
    std::vector<double> lambda_grid;
    std::vector<cplx> wronskian;
    bool resonant = false;
    bool ambiguous = false;        // |W(0)| within a factor 2 of the threshold
    std::optional<cplx> c0;        // proportionality when resonant
    double c0_residual = 0.0;      // sup |m_-(0,.) - c0 m_+(0,.)|
    double media_plus = 0.0;       // |int V m_+(0,.)| (vanishes when resonant)
    double media_minus = 0.0;
    std::vector<double> bound_state_energies;
};

struct ResonanceOptions {
    double rel_tol = 1e-4;   // |W(0)| < rel_tol * sup_{|l|<=1} |W|
    double c0_window = 10.0; // least-squares window |x| <= c0_window
};

/// Classify the zero-energy behaviour of (V, jost): resonant iff W(0) ~ 0.
ScatteringData detect_resonance(const JostField& jost, const SampledPotential& V,
                                const ResonanceOptions& opts = {});

/// W(i kappa) on the positive imaginary axis (real for real V).
double wronskian_at_ik(const SampledPotential& V, double kappa,
                       const VolterraOptions& opts = {});

/// Bound states as zeros of W(i kappa), kappa in (kappa_floor, kappa_max],
/// located by scan + bisection; energies are -kappa^2.
std::vector<double> find_bound_states(const SampledPotential& V,
                                      double kappa_floor = 1e-4,
                                      const VolterraOptions& opts = {});

/// Populate everything: Wronskian, resonance classification, bound states.
ScatteringData build_scattering_data(const JostField& jost, const SampledPotential& V,
                                     const ResonanceOptions& opts = {});

/// Max interior residual of m'' +- 2 i lambda m' - V m = 0 for one lambda row
/// (finite differences); a field-construction diagnostic.
double msolve_residual(const JostField& jost, const SampledPotential& V,
                       std::size_t lambda_index, Side side);

} // namespace scat1d

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scat1d/grid.hpp"

namespace scat1d {

/// Closed-form scattering data attached to a bundled test potential.
/// Everything here is assembled from analytic formulas (pole algebra or
/// plane-wave matching), independent of the numerical solvers it checks.
struct ScatteringOracle {
    std::function<cplx(cplx lambda, double x)> m_plus;
    std::function<cplx(cplx lambda, double x)> m_minus;
    std::function<cplx(cplx lambda)> wronskian;
    bool resonant = false;
    cplx c0{0.0, 0.0};                  // m_-(0,.) = c0 * m_+(0,.) when resonant
    std::vector<double> bound_state_energies;
};

/// A real potential sampled on a uniform grid, with the weighted-norm
/// metadata used by every estimate in the toolkit:
///   eta(x)      = int_x^inf |V|,
///   gamma_fn(x) = int_x^inf (t - x) |V(t)| dt  (= int_x^inf eta).
class SampledPotential {
  public:
    SampledPotential() = default;
    SampledPotential(Grid grid, std::vector<double> values,
                     std::shared_ptr<const ScatteringOracle> oracle = nullptr,
                     std::string name = "custom");

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator()(std::size_t k) const { return values_[k]; }
    const std::string& name() const { return name_; }

    double l1_norm() const { return l1_norm_; }           // lambda_0
    const std::vector<double>& eta() const { return eta_; }
    const std::vector<double>& gamma_fn() const { return gamma_fn_; }
    double eta_at(double x) const;
    double gamma_at(double x) const;

    /// ||(1+|x|)^gamma V||_{L^1}, cached per exponent.
    double weighted_norm(double gamma) const;
    const std::map<double, double>& weighted_norms() const { return weighted_norms_; }

    /// Index range [lo, hi] of nodes where V is nonzero; empty() when V == 0.
    std::size_t support_lo() const { return sup_lo_; }
    std::size_t support_hi() const { return sup_hi_; }
    bool is_zero() const { return sup_lo_ > sup_hi_; }

    const ScatteringOracle* oracle() const { return oracle_.get(); }

    /// Resample this potential onto another grid (monotone cubic in x).
    SampledPotential resampled(const Grid& g) const;

  private:
    Grid grid_;
    std::vector<double> values_;
    std::string name_;
    double l1_norm_ = 0.0;
    std::vector<double> eta_, gamma_fn_;
    mutable std::map<double, double> weighted_norms_;
    std::size_t sup_lo_ = 1, sup_hi_ = 0;
    std::shared_ptr<const ScatteringOracle> oracle_;
};

/// Composite-trapezoid approximation of int (1+|x|)^gamma |V| dx.
double weighted_norm(const SampledPotential& V, double gamma);

SampledPotential make_zero(const Grid& g);

/// V(x) = -2 sech^2 x. Reflectionless; resonant at zero with c0 = -1 and a
/// single bound state at energy -1. Oracle:
///   m_+(l, x) = (l + i tanh x)/(l + i),  m_-(l, x) = (l - i tanh x)/(l + i),
///   W(l) = -2 i l (l - i)/(l + i).
SampledPotential make_poschl_teller(const Grid& g);

/// V = -depth * 1_[-w, w]. Nodes falling on an edge get value -depth/2 so the
/// sampled mass matches the true well to O(h^2). Oracle Jost data come from
/// plane-wave matching across the two jumps and hold for complex lambda.
SampledPotential make_square_well(const Grid& g, double depth, double half_width);

/// V(x) = amplitude * exp(-(x/width)^2); no closed-form oracle.
SampledPotential make_gaussian(const Grid& g, double amplitude, double width);

/// Builtin lookup by CLI name: zero | poschl-teller | well | gaussian.
SampledPotential make_builtin(const std::string& name, const Grid& g,
                              double depth = 1.0, double half_width = 1.0);

/// Two-column CSV (x, V) with a header line; x must be strictly increasing.
/// The table is interpolated onto `g`.
SampledPotential load_potential_csv(const std::string& path, const Grid& g);
void save_potential_csv(const std::string& path, const SampledPotential& V);

} // namespace scat1d

#pragma once

#include <random>

#include "scat1d/kernels.hpp"
#include "scat1d/resolvent.hpp"

namespace scat1d {

enum class WaveDirection { plus, minus }; // s -> +inf / s -> -inf limits
enum class FrequencyHalf { A, B, both };  // positive / negative lambda piece

struct LambdaQuadSpec {
    int panels = 16;         // Gauss-Legendre panels on [lambda_min, lambda_split]
    int nodes_per_panel = 16;
    double lambda_min = 1e-3; // one extra open panel covers (0, lambda_min]
};

std::vector<double> make_lambda_grid(double lambda_max, std::size_t n_points);

struct WaveOpConfig {
    CutoffSpec cutoff;
    int n_series = 20;              // high-energy series truncation
    LambdaQuadSpec lambda_quad;     // low-energy stationary quadrature
    double k1_reg_L = 512.0;        // lambda band for the regularized n=1 multiplier
    std::vector<double> lambda_grid; // synthesis grid (uniform, contains 0)
    double series_tol = 0.0;        // > 0: throw truncation_error when the
                                    // remainder bound exceeds it
};

WaveOpConfig default_waveop_config(const SampledPotential& V, double lambda_max = 8.0,
                                   std::size_t lambda_points = 1025);

/// Assembled wave operator W_dir for H = -d^2/dx^2 + V. The high-energy part
/// is the truncated series over (R_0 V)^n against the Phi_high cutoff; the
/// low-energy part is the stationary integral
///     W Phi_low(H_0) g = Phi_low(H_0) g
///         - (2/pi) int_0^inf R_V(l^2 -+ i0) V Im R_0(l^2 + i0) l Phi_low g dl,
/// with the lambda/W grouping that stays regular in the resonant case.
/// The 2/pi constant and the resolvent boundary pairing are pinned by the
/// V = 0 identity and the strong-limit oracle.
class WaveOperator {
  public:
    WaveOperator(const SampledPotential& V, WaveOpConfig cfg, WaveDirection dir,
                 const VolterraOptions& volterra = {}, int jobs = 0);

    const WaveOpConfig& config() const { return cfg_; }
    WaveDirection direction() const { return dir_; }
    const Grid& grid() const { return grid_; }

    /// Truncation remainder bound sum_{n > n_series} n^2 2^-n ||V||_L1 ||g||_inf.
    double series_remainder_bound(double g_sup) const;

    ComplexSignal high_energy_apply(const ComplexSignal& g,
                                    FrequencyHalf half = FrequencyHalf::both) const;
    ComplexSignal low_energy_apply(const ComplexSignal& g) const;
    ComplexSignal apply(const ComplexSignal& g) const;
    ComplexSignal apply_adjoint(const ComplexSignal& g) const;

    /// sup norms of the individual series terms A_n g, n = 0 .. n_series
    /// (diagnostic pass; n = 1 uses the regularized multiplier route).
    std::vector<double> series_term_sups(const ComplexSignal& g) const;

    /// Dense matrix of the operator in the nodal basis, row-major.
    Array2D<cplx> assemble_dense(int jobs = 0) const;

  private:
    ComplexSignal multiplier_synthesis(const ComplexSignal& g,
                                       const std::function<double(double)>& mult) const;
    ComplexSignal series_apply(const ComplexSignal& g, FrequencyHalf half,
                               bool adjoint, bool include_n1) const;
    ComplexSignal a1_contribution(const ComplexSignal& g, FrequencyHalf half) const;
    ComplexSignal low_correction(const ComplexSignal& g, bool adjoint) const;

    SampledPotential V_;
    WaveOpConfig cfg_;
    WaveDirection dir_;
    Grid grid_;
    int jobs_ = 0;

    // high-energy series data at the synthesis nodes where phi_high > 0
    struct SeriesNode {
        double lambda;
        double weight;     // trapezoid weight * phi_high
        std::vector<cplx> h1;   // (R_0 V) e^{i lambda .}
        std::vector<cplx> hsum; // sum_{n>=2} (-1)^n (R_0 V)^n e^{i lambda .}
    };
    std::vector<SeriesNode> series_nodes_;

    // regularized n = 1 multiplier transform, sampled on a dense xi table
    std::vector<double> eta_xi_;
    std::vector<cplx> eta_hat_;

    // low-energy Gauss-Legendre nodes
    struct LowNode {
        double lambda;
        double coeff;          // (2/pi) w phi_low(l^2) * (l / W)
        std::vector<cplx> fp, fm; // Jost solutions at l~ = -+ lambda
    };
    std::vector<LowNode> low_nodes_;
};

/// Wave operator application W g / adjoint, convenience entry points.
ComplexSignal wave_operator_apply(const WaveOperator& W, const ComplexSignal& g);

struct LpProbeReport {
    double p = 2.0;
    int n_samples = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    std::vector<double> ratios;
};

/// Empirical sup of ||W g||_p / ||g||_p over seeded random band-limited,
/// bump, and oscillatory families. A probe, not a proof.
LpProbeReport lp_bound_probe(const WaveOperator& W, double p, int n_samples,
                             std::uint64_t seed = 1234);

struct EndpointProbeReport {
    int n_samples = 0;
    double max_ratio = 0.0; // ||W g||_inf / (||g||_inf + ||H g||_inf)
    std::vector<double> ratios;
};

EndpointProbeReport endpoint_probe(const WaveOperator& W, int n_samples,
                                   std::uint64_t seed = 1234);

/// Random test signals shared by the probes (seeded, band |lambda| <= band).
ComplexSignal random_band_limited(const Grid& g, double band, std::mt19937_64& rng);
ComplexSignal random_bump(const Grid& g, std::mt19937_64& rng);
ComplexSignal random_oscillatory(const Grid& g, double band, std::mt19937_64& rng);

} // namespace scat1d

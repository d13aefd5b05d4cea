#pragma once

#include <string>
#include <vector>

#include "scat1d/fft.hpp"
#include "scat1d/jost.hpp"
#include "scat1d/resolvent.hpp"

namespace scat1d {

// B_pm is kept in the Marchenko normalization: B(., x) is the kernel whose
// inverse transform reproduces m - 1 via m(l,x) - 1 = int e^{2 i l xi} B dxi.
// With the global convention ghat(l) = int e^{-i l y} g(y) dy this reads
//   B_pm(xi, x) = (1/pi) int e^{-2 i l xi} (m_pm(l, x) - 1) dl,
// the factor 2 being absorbed by the xi relabeling. This normalization is the
// one under which the Marchenko equation and the pointwise majorant bounds
// carry coefficient one.

/// One transformed column B(., x) plus support-leak diagnostics.
struct KernelColumn {
    std::vector<double> xi;
    std::vector<double> b;       // real part (B is real valued to tolerance)
    double imag_leak = 0.0;      // sup |Im| / (1 + sup |Re|)
    double support_leak = 0.0;   // sup |B| on the vanishing side / sup |B|
    bool truncation_warning = false; // |m-1| not small at the lambda ends
};

/// Fourier route: transform of m_pm(., x) - 1 with the slow 1/lambda tail
/// removed analytically. The subtracted model
///   (B0 + B1 xi) e^{-2 xi} 1_{xi > 0}     (mirrored for the minus side)
/// has closed-form transform and closed-form coefficients
///   B0(x) = int_x^inf V,  B1(x) = 2 B0 - V(x) + B0^2/2,
/// so only an O(lambda^-3) remainder goes through the discrete transform.
KernelColumn b_from_fourier(const JostField& jost, const SampledPotential& V,
                            std::size_t x_index, Side side, double tail_tol = 1e-3);

/// Marchenko fixed point by Picard sweeps on the (xi, t) rectangle
/// t in [x, sup V]; serves as the independent oracle for b_from_fourier.
/// Returns B_+(., x) on xi_grid.
std::vector<double> marchenko_solve(const SampledPotential& V, double x,
                                    const std::vector<double>& xi_grid,
                                    double tol = 1e-10, int max_iter = 300);

/// Batch version sharing one coupled solve for several x samples.
Array2D<double> marchenko_field(const SampledPotential& V,
                                const std::vector<double>& x_samples,
                                const std::vector<double>& xi_grid,
                                double tol = 1e-10, int max_iter = 300);

enum class KernelKind { B, C, C_tilde };

/// Fourier-side kernels on an x-sample list, with per-x L1(dxi) norms.
struct KernelField {
    std::vector<double> xi_grid;
    std::vector<double> x_samples;
    Array2D<double> B_plus, B_minus;
    Array2D<cplx> C_plus, C_minus, C_tilde_plus, C_tilde_minus;
    std::vector<double> l1_B_plus, l1_B_minus;
    std::vector<double> l1_C_plus, l1_C_minus;
    std::vector<double> l1_Ct_plus, l1_Ct_minus;
    double support_leak_plus = 0.0, support_leak_minus = 0.0;
};

KernelField build_kernel_field(const JostField& jost, const SampledPotential& V,
                               const std::vector<double>& x_samples, int jobs = 0);

/// Growth table row: x, L1 norm, fitted envelope value, shared exponent.
struct GrowthRow {
    double x = 0.0;
    double norm = 0.0;
    double envelope = 0.0;
};
struct GrowthTable {
    KernelKind which;
    Side side;
    std::vector<GrowthRow> rows;        // every sample
    double fitted_exponent = 0.0;       // log norm vs log <x>, unfavorable side
    double fit_intercept = 0.0;
    std::size_t fit_count = 0;
};

/// Least-squares log-log fit on the unfavorable side (x < 0 for plus,
/// x > 0 for minus) within the window |x| in [5, 30].
GrowthTable growth_table(const KernelField& field, KernelKind which, Side side,
                         double window_lo = 5.0, double window_hi = 30.0);

enum class WienerMode { inverse_W, lambda_over_W };

/// l1 norm (on the dual grid) of the transform of chi(l)/W or chi(l) l/W,
/// chi = cutoff.phi_low. Finiteness and grid-refinement stability stand in
/// for L1 membership.
double wiener_quotient_norm(const ScatteringData& sd, const CutoffSpec& cutoff,
                            WienerMode mode);

struct HilbertResult {
    ComplexSignal signal;
    double boundary_level = 0.0; // |g| at the ends relative to sup |g|
    bool boundary_warning = false;
};

/// Fourier multiplier -i sgn(lambda), normalized so H(cos) = sin. The input
/// is tapered by a smooth window over the outer margin; non-decaying input is
/// reported through boundary_warning.
HilbertResult hilbert_transform(const ComplexSignal& g, double tail_tol = 1e-6,
                                double taper_fraction = 0.1);

} // namespace scat1d

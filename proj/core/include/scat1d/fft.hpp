#pragma once

#include <vector>

#include "scat1d/grid.hpp"

namespace scat1d {

// One Fourier convention is used everywhere:
//     ghat(lambda) = int e^{-i lambda y} g(y) dy,
//     g(y)         = (1/2pi) int e^{+i lambda y} ghat(lambda) dlambda.

/// In-place complex FFT, sign = -1 for e^{-i...} (forward), +1 for inverse
/// without the 1/N factor. Size may be arbitrary (FFTW).
void fft(std::vector<cplx>& data, int sign);

/// Result of a sampled line Fourier transform: values on the dual grid.
struct LineTransform {
    std::vector<double> xi;   // dual variable, ascending, centered at 0
    std::vector<cplx> values; // F(xi_k) = int e^{-i lambda xi_k} h(lambda) dlambda
};

/// Approximates int e^{-i lambda xi} h(lambda) dlambda for h sampled on the
/// uniform grid `lam`, by trapezoid weights + zero padding (pad_factor >= 1).
LineTransform line_fourier(const std::vector<double>& lam, const std::vector<cplx>& h,
                           int pad_factor = 4);

/// Direct quadrature of ghat(lambda) = int e^{-i lambda y} g(y) dy at one
/// lambda; trapezoid on the signal grid.
cplx fourier_at(const ComplexSignal& g, double lambda);

/// Apply a Fourier multiplier m(lambda) to a grid signal through the FFT.
/// The multiplier is sampled on the FFT's natural frequency grid.
ComplexSignal apply_multiplier(const ComplexSignal& g,
                               const std::function<cplx(double)>& m);

} // namespace scat1d

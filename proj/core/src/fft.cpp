#include "scat1d/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <functional>
#include <mutex>

#include "scat1d/errors.hpp"

namespace scat1d {

namespace {
std::mutex g_fftw_mutex; // FFTW plan creation is not thread safe
}

void fft(std::vector<cplx>& data, int sign) {
    if (data.empty()) return;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_1d(int(data.size()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

LineTransform line_fourier(const std::vector<double>& lam, const std::vector<cplx>& h,
                           int pad_factor) {
    const std::size_t m = lam.size();
    if (m < 2 || h.size() != m) throw input_error("line_fourier: bad input");
    if (pad_factor < 1) pad_factor = 1;
    const double dl = lam[1] - lam[0];

    std::size_t n = 1;
    while (n < m * std::size_t(pad_factor)) n <<= 1;

    // trapezoid end weights, then zero padding
    std::vector<cplx> buf(n, cplx(0.0));
    for (std::size_t j = 0; j < m; ++j) buf[j] = h[j];
    buf[0] *= 0.5;
    buf[m - 1] *= 0.5;

    fft(buf, -1); // sum_j buf_j e^{-2pi i jk/n}

    // F(xi_k) = dl * e^{-i lam_0 xi_k} * DFT_k, xi_k = 2 pi k / (n dl)
    const double dxi = 2.0 * M_PI / (double(n) * dl);
    LineTransform out;
    out.xi.resize(n);
    out.values.resize(n);
    const long half = long(n) / 2;
    for (long k = -half; k < half; ++k) {
        std::size_t idx = std::size_t(k + half);
        std::size_t src = std::size_t((k + long(n)) % long(n));
        double xi = double(k) * dxi;
        out.xi[idx] = xi;
        out.values[idx] = dl * std::exp(cplx(0, -lam[0] * xi)) * buf[src];
    }
    return out;
}

cplx fourier_at(const ComplexSignal& g, double lambda) {
    std::vector<cplx> f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        f[k] = std::exp(cplx(0, -lambda * g.grid[k])) * g[k];
    return trapezoid(g.grid, f);
}

ComplexSignal apply_multiplier(const ComplexSignal& g,
                               const std::function<cplx(double)>& m) {
    const std::size_t n = g.size();
    std::vector<cplx> buf = g.values;
    fft(buf, -1);
    const double L = g.grid.spacing() * double(n);
    for (std::size_t k = 0; k < n; ++k) {
        long kk = long(k) <= long(n) / 2 - 1 ? long(k) : long(k) - long(n);
        double lambda = 2.0 * M_PI * double(kk) / L;
        buf[k] *= m(lambda);
    }
    fft(buf, +1);
    ComplexSignal out(g.grid);
    for (std::size_t k = 0; k < n; ++k) out[k] = buf[k] / double(n);
    return out;
}

} // namespace scat1d

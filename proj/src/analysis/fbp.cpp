#include <cmath>
#include <complex>
#include <vector>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

namespace {

// in-place iterative radix-2 FFT; n must be a power of two
void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / double(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                auto u = a[i + j];
                auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& v : a) v /= double(n);
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace

FloatImage fbp_reconstruct(const Sinogram& sg, FbpFilter filter) {
    if (sg.n_angles < 1 || sg.n_detectors < 2 ||
        sg.v.size() != std::size_t(sg.n_angles) * std::size_t(sg.n_detectors))
        throw Error("InvalidGeometry", "sinogram shape is invalid");

    const int na = sg.n_angles, nd = sg.n_detectors;
    std::vector<double> filtered(sg.v);

    if (filter == FbpFilter::ramlak) {
        const std::size_t m = next_pow2(std::size_t(2) * nd);
        // Frequency window = DFT of the discrete Ram-Lak kernel. This equals
        // |f| away from DC but keeps the small positive DC term of the
        // truncated kernel, which preserves the reconstruction's total mass.
        std::vector<std::complex<double>> kernel(m);
        kernel[0] = 0.25;
        for (std::size_t j = 1; j < m / 2; ++j) {
            double v = (j % 2 == 1) ? -1.0 / (M_PI * M_PI * double(j) * double(j)) : 0.0;
            kernel[j] = v;
            kernel[m - j] = v;
        }
        fft(kernel, false);
        std::vector<double> window(m);
        for (std::size_t k = 0; k < m; ++k) window[k] = kernel[k].real();

        std::vector<std::complex<double>> buf(m);
        for (int a = 0; a < na; ++a) {
            std::fill(buf.begin(), buf.end(), std::complex<double>(0));
            for (int d = 0; d < nd; ++d) buf[d] = sg.at(a, d);
            fft(buf, false);
            for (std::size_t k = 0; k < m; ++k) buf[k] *= window[k];
            fft(buf, true);
            for (int d = 0; d < nd; ++d) filtered[std::size_t(a) * nd + d] = buf[d].real();
        }
    }

    FloatImage img;
    img.rows = nd;
    img.cols = nd;
    img.px.assign(std::size_t(nd) * nd, 0.0);
    const double center = (nd - 1) / 2.0;
    const double scale = M_PI / double(na);

    for (int a = 0; a < na; ++a) {
        double theta = double(a) * M_PI / double(na);
        double ct = std::cos(theta), st = std::sin(theta);
        const double* row = &filtered[std::size_t(a) * nd];
        for (int r = 0; r < nd; ++r) {
            double yc = r - center;
            for (int c = 0; c < nd; ++c) {
                double xc = c - center;
                double t = xc * ct + yc * st + center;
                if (t < 0 || t > nd - 1) continue;
                int t0 = int(std::floor(t));
                if (t0 > nd - 2) t0 = nd - 2;
                double f = t - t0;
                img.at(r, c) += scale * (row[t0] * (1 - f) + row[t0 + 1] * f);
            }
        }
    }
    return img;
}

}  // namespace aurakit::analysis

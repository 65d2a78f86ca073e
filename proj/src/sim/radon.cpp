#include "aurakit/sim/radon.hpp"

#include <cmath>

#include "aurakit/core/error.hpp"
#include "aurakit/core/rng.hpp"

namespace aurakit::sim {

using analysis::FloatImage;
using analysis::Sinogram;

namespace {

double bilinear(const FloatImage& img, double x, double y) {
    if (x < 0 || y < 0 || x > img.cols - 1 || y > img.rows - 1) return 0.0;
    int x0 = std::min(int(x), img.cols - 2);
    int y0 = std::min(int(y), img.rows - 2);
    if (x0 < 0) x0 = 0;
    if (y0 < 0) y0 = 0;
    double fx = x - x0, fy = y - y0;
    return img.at(y0, x0) * (1 - fx) * (1 - fy) + img.at(y0, x0 + 1) * fx * (1 - fy) +
           img.at(y0 + 1, x0) * (1 - fx) * fy + img.at(y0 + 1, x0 + 1) * fx * fy;
}

}  // namespace

Sinogram simulate_sinogram(const FloatImage& phantom, int n_angles, int n_detectors) {
    if (phantom.rows != phantom.cols || phantom.rows < 2)
        throw Error("InvalidGeometry", "phantom must be square");
    if (n_angles < 1) throw Error("InvalidGeometry", "need n_angles >= 1");
    if (n_detectors < phantom.cols)
        throw Error("InvalidGeometry", "need n_detectors >= phantom side length");

    const int n = phantom.cols;
    const double center = (n - 1) / 2.0;
    const double det_center = (n_detectors - 1) / 2.0;
    const double step = 0.5;  // ray sampling step, pixels
    const double half_len = n / std::sqrt(2.0) + 2.0;

    Sinogram sg;
    sg.n_angles = n_angles;
    sg.n_detectors = n_detectors;
    sg.v.assign(std::size_t(n_angles) * n_detectors, 0.0);

    for (int a = 0; a < n_angles; ++a) {
        double theta = double(a) * M_PI / double(n_angles);
        double ct = std::cos(theta), st = std::sin(theta);
        for (int d = 0; d < n_detectors; ++d) {
            double s = d - det_center;
            double ox = center + s * ct, oy = center + s * st;
            double acc = 0;
            for (double u = -half_len; u <= half_len; u += step)
                acc += bilinear(phantom, ox - u * st, oy + u * ct);
            sg.at(a, d) = acc * step;
        }
    }
    return sg;
}

FloatImage make_disk_phantom(int n, double radius, double value) {
    FloatImage img;
    img.rows = n;
    img.cols = n;
    img.px.assign(std::size_t(n) * n, 0.0);
    const double center = (n - 1) / 2.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            double d = std::hypot(r - center, c - center);
            // 1-pixel anti-aliased edge
            double cov = std::clamp(radius - d + 0.5, 0.0, 1.0);
            img.at(r, c) = value * cov;
        }
    }
    return img;
}

FloatImage make_ct_phantom(std::uint64_t seed, int n) {
    StreamRng r(seed, "microct.phantom");
    FloatImage img = make_disk_phantom(n, 0.45 * n, 1.0);

    int k = 2 + int(r.next_u64() % 3);
    const double center = (n - 1) / 2.0;
    for (int i = 0; i < k; ++i) {
        double cx = center + r.uniform(-0.22, 0.22) * n;
        double cy = center + r.uniform(-0.22, 0.22) * n;
        double ax = r.uniform(0.05, 0.18) * n;
        double ay = r.uniform(0.05, 0.18) * n;
        double ang = r.uniform(0, M_PI);
        double density = (r.uniform() < 0.5 ? -1 : 1) * r.uniform(0.2, 0.8);
        double ca = std::cos(ang), sa = std::sin(ang);
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) {
                double dx = col - cx, dy = row - cy;
                double u = (dx * ca + dy * sa) / ax;
                double v = (-dx * sa + dy * ca) / ay;
                double q = std::sqrt(u * u + v * v);
                // soft edge roughly one pixel wide in the minor-axis scale
                double edge = std::min(ax, ay);
                double cov = std::clamp((1.0 - q) * edge + 0.5, 0.0, 1.0);
                double val = img.at(row, col) + density * cov;
                img.at(row, col) = std::max(0.0, val);
            }
        }
    }
    return img;
}

}  // namespace aurakit::sim

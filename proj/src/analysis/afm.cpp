#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

namespace {

void require_map(const HeightMap& h, int min_dim) {
    if (h.rows < min_dim || h.cols < min_dim ||
        h.z.size() != std::size_t(h.rows) * std::size_t(h.cols))
        throw Error("InvalidMap", "height map dimensions are inconsistent or too small");
}

double bilinear(const HeightMap& h, double x, double y) {
    int x0 = int(std::floor(x)), y0 = int(std::floor(y));
    if (x0 > h.cols - 2) x0 = h.cols - 2;
    if (y0 > h.rows - 2) y0 = h.rows - 2;
    if (x0 < 0) x0 = 0;
    if (y0 < 0) y0 = 0;
    double fx = x - x0, fy = y - y0;
    return h.at(y0, x0) * (1 - fx) * (1 - fy) + h.at(y0, x0 + 1) * fx * (1 - fy) +
           h.at(y0 + 1, x0) * (1 - fx) * fy + h.at(y0 + 1, x0 + 1) * fx * fy;
}

}  // namespace

HeightMap afm_level_plane(const HeightMap& h) {
    require_map(h, 2);
    // normal equations for z ~ a + b*x + c*y (x = col, y = row)
    double n = double(h.rows) * h.cols;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, sz = 0, sxz = 0, syz = 0;
    for (int r = 0; r < h.rows; ++r) {
        for (int c = 0; c < h.cols; ++c) {
            double x = c, y = r, z = h.at(r, c);
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
            sz += z;
            sxz += x * z;
            syz += y * z;
        }
    }
    // solve the 3x3 system [n sx sy; sx sxx sxy; sy sxy syy] [a b c] = [sz sxz syz]
    double m[3][4] = {{n, sx, sy, sz}, {sx, sxx, sxy, sxz}, {sy, sxy, syy, syz}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[piv][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    double a = m[0][3] / m[0][0], b = m[1][3] / m[1][1], c3 = m[2][3] / m[2][2];

    HeightMap out = h;
    for (int r = 0; r < h.rows; ++r)
        for (int c = 0; c < h.cols; ++c) out.at(r, c) = h.at(r, c) - (a + b * c + c3 * r);
    return out;
}

AfmRoughness afm_roughness(const HeightMap& h) {
    require_map(h, 1);
    double mean = 0;
    for (double v : h.z) mean += v;
    mean /= double(h.z.size());
    double sa = 0, sq = 0;
    for (double v : h.z) {
        double d = v - mean;
        sa += std::abs(d);
        sq += d * d;
    }
    AfmRoughness r;
    r.ra = sa / double(h.z.size());
    r.rq = std::sqrt(sq / double(h.z.size()));
    return r;
}

Spectrum afm_profile(const HeightMap& h, std::pair<double, double> p0,
                     std::pair<double, double> p1, int n) {
    require_map(h, 2);
    if (n < 2) throw Error("InvalidArgument", "profile needs n >= 2 samples");
    auto inside = [&](const std::pair<double, double>& p) {
        return p.first >= 0 && p.first <= h.cols - 1 && p.second >= 0 && p.second <= h.rows - 1;
    };
    if (!inside(p0) || !inside(p1))
        throw Error("OutOfBounds", "profile endpoints must lie inside the map");
    double dx = p1.first - p0.first, dy = p1.second - p0.second;
    double len = std::hypot(dx, dy);
    if (len == 0) throw Error("OutOfBounds", "profile segment is degenerate (p0 == p1)");

    Spectrum out;
    out.x_unit = "px";
    out.y_unit = "height";
    out.x.reserve(n);
    out.y.reserve(n);
    for (int i = 0; i < n; ++i) {
        double f = double(i) / (n - 1);
        out.x.push_back(f * len);
        out.y.push_back(bilinear(h, p0.first + f * dx, p0.second + f * dy));
    }
    return out;
}

}  // namespace aurakit::analysis

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

int otsu_threshold(const GrayImage& img) {
    if (img.px.empty()) throw Error("InvalidImage", "image is empty");
    std::array<std::int64_t, 256> hist{};
    for (auto v : img.px) ++hist[v];
    const double total = double(img.px.size());

    double sum_all = 0;
    for (int i = 0; i < 256; ++i) sum_all += double(i) * double(hist[i]);

    double best_var = -1;
    int best_t = 0;
    double w0 = 0, sum0 = 0;
    for (int tcand = 0; tcand < 256; ++tcand) {
        w0 += double(hist[tcand]);
        if (w0 == 0) continue;
        double w1 = total - w0;
        if (w1 == 0) break;
        sum0 += double(tcand) * double(hist[tcand]);
        double m0 = sum0 / w0;
        double m1 = (sum_all - sum0) / w1;
        double var = w0 * w1 * (m0 - m1) * (m0 - m1);
        if (var > best_var) {
            best_var = var;
            best_t = tcand;
        }
    }
    // pixels <= best_t are one class; pore test is "value < level"
    return best_t + 1;
}

PoreStats sem_pores(const GrayImage& img, PoreThreshold threshold, int min_area) {
    if (img.rows <= 0 || img.cols <= 0 ||
        img.px.size() != std::size_t(img.rows) * std::size_t(img.cols))
        throw Error("InvalidImage", "image dimensions are inconsistent");
    if (min_area < 1) throw Error("InvalidArgument", "min_area must be >= 1");

    const int level = threshold.fixed.has_value() ? *threshold.fixed : otsu_threshold(img);
    const int rows = img.rows, cols = img.cols;
    auto is_pore = [&](int r, int c) { return int(img.at(r, c)) < level; };

    std::vector<int> label(std::size_t(rows) * cols, -1);
    std::vector<std::vector<std::pair<int, int>>> components;

    // 8-connected components, row-major discovery order
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (!is_pore(r, c) || label[std::size_t(r) * cols + c] >= 0) continue;
            int id = int(components.size());
            components.emplace_back();
            std::queue<std::pair<int, int>> q;
            q.push({r, c});
            label[std::size_t(r) * cols + c] = id;
            while (!q.empty()) {
                auto [cr, cc] = q.front();
                q.pop();
                components[id].push_back({cr, cc});
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (dr == 0 && dc == 0) continue;
                        int nr = cr + dr, nc = cc + dc;
                        if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                        if (!is_pore(nr, nc)) continue;
                        auto& l = label[std::size_t(nr) * cols + nc];
                        if (l < 0) {
                            l = id;
                            q.push({nr, nc});
                        }
                    }
                }
            }
        }
    }

    PoreStats stats;
    double kept_area = 0;
    for (const auto& comp : components) {
        if (int(comp.size()) < min_area) continue;
        PoreRecord rec;
        rec.area_px = double(comp.size());
        rec.equivalent_diameter_px = 2.0 * std::sqrt(rec.area_px / M_PI);
        double sr = 0, sc = 0;
        int my_label = label[std::size_t(comp[0].first) * cols + comp[0].second];
        for (auto [r, c] : comp) {
            sr += r;
            sc += c;
            bool edge = false;
            const int dr4[] = {-1, 1, 0, 0}, dc4[] = {0, 0, -1, 1};
            for (int k = 0; k < 4; ++k) {
                int nr = r + dr4[k], nc = c + dc4[k];
                if (nr < 0 || nr >= rows || nc < 0 || nc >= cols ||
                    label[std::size_t(nr) * cols + nc] != my_label) {
                    edge = true;
                    break;
                }
            }
            if (edge) rec.boundary.push_back({r, c});
        }
        rec.centroid_r = sr / rec.area_px;
        rec.centroid_c = sc / rec.area_px;
        kept_area += rec.area_px;
        stats.pores.push_back(std::move(rec));
    }
    stats.count = int(stats.pores.size());
    stats.porosity = kept_area / double(rows * cols);
    return stats;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

double misorientation(double a, double b) {
    double d = std::abs(a - b);
    d = std::fmod(d, 180.0);
    return std::min(d, 180.0 - d);
}

}  // namespace

GrainStats ebsd_grains(const OrientationMap& m, double low_angle, double high_angle) {
    if (m.rows <= 0 || m.cols <= 0 ||
        m.theta.size() != std::size_t(m.rows) * std::size_t(m.cols))
        throw Error("InvalidMap", "orientation map dimensions are inconsistent");
    if (!(low_angle > 0 && low_angle < high_angle))
        throw Error("InvalidThresholds", "need 0 < low_angle < high_angle");

    const int rows = m.rows, cols = m.cols;
    const int n = rows * cols;
    UnionFind uf(n);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int i = r * cols + c;
            if (c + 1 < cols && misorientation(m.at(r, c), m.at(r, c + 1)) < low_angle)
                uf.unite(i, i + 1);
            if (r + 1 < rows && misorientation(m.at(r, c), m.at(r + 1, c)) < low_angle)
                uf.unite(i, i + cols);
        }
    }

    GrainStats g;
    g.rows = rows;
    g.cols = cols;
    g.labels.assign(n, -1);
    std::vector<int> root_to_label(n, -1);
    for (int i = 0; i < n; ++i) {
        int root = uf.find(i);
        if (root_to_label[root] < 0) {
            root_to_label[root] = g.grain_count++;
            g.grain_areas.push_back(0);
        }
        g.labels[i] = root_to_label[root];
        ++g.grain_areas[g.labels[i]];
    }

    g.boundary.assign(n, BoundaryKind::none);
    g.misorientation_histogram.assign(180, 0);
    const int dr4[] = {-1, 1, 0, 0}, dc4[] = {0, 0, -1, 1};
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double worst = 0;
            for (int k = 0; k < 4; ++k) {
                int nr = r + dr4[k], nc = c + dc4[k];
                if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                worst = std::max(worst, misorientation(m.at(r, c), m.at(nr, nc)));
            }
            if (worst >= high_angle)
                g.boundary[std::size_t(r) * cols + c] = BoundaryKind::high_angle;
            else if (worst >= low_angle)
                g.boundary[std::size_t(r) * cols + c] = BoundaryKind::low_angle;
            else
                continue;
            int bin = std::min(179, int(std::floor(worst)));
            ++g.misorientation_histogram[bin];
        }
    }
    return g;
}

RgbImage ipf_colormap(const OrientationMap& m) {
    if (m.rows <= 0 || m.cols <= 0 ||
        m.theta.size() != std::size_t(m.rows) * std::size_t(m.cols))
        throw Error("InvalidMap", "orientation map dimensions are inconsistent");
    RgbImage img;
    img.rows = m.rows;
    img.cols = m.cols;
    img.px.resize(m.theta.size());
    for (std::size_t i = 0; i < m.theta.size(); ++i) {
        double theta = m.theta[i];
        if (theta < 0 || theta >= 180.0)
            throw Error("InvalidMap", "orientation values must lie in [0, 180)");
        double hue = theta / 180.0 * 360.0;  // degrees
        double hp = hue / 60.0;
        double fx = 1.0 - std::abs(std::fmod(hp, 2.0) - 1.0);
        double r = 0, gch = 0, b = 0;
        switch (int(hp) % 6) {
            case 0: r = 1; gch = fx; break;
            case 1: r = fx; gch = 1; break;
            case 2: gch = 1; b = fx; break;
            case 3: gch = fx; b = 1; break;
            case 4: r = fx; b = 1; break;
            default: r = 1; b = fx; break;
        }
        img.px[i] = {std::uint8_t(std::lround(r * 255)), std::uint8_t(std::lround(gch * 255)),
                     std::uint8_t(std::lround(b * 255))};
    }
    return img;
}

}  // namespace aurakit::analysis

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"
#include "aurakit/core/rng.hpp"

using namespace aurakit;
using namespace aurakit::analysis;

namespace {

GrayImage blank(int rows, int cols, std::uint8_t v = 255) {
    GrayImage img;
    img.rows = rows;
    img.cols = cols;
    img.px.assign(std::size_t(rows) * cols, v);
    return img;
}

void draw_disk(GrayImage& img, double cr, double cc, double radius, std::uint8_t v = 0) {
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c)
            if (std::hypot(r - cr, c - cc) <= radius) img.at(r, c) = v;
}

int disk_pixel_count(const GrayImage& img, double cr, double cc, double radius) {
    int n = 0;
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c)
            if (std::hypot(r - cr, c - cc) <= radius) ++n;
    return n;
}

}  // namespace

TEST_CASE("pores: blank image has none") {
    auto img = blank(64, 64);
    auto stats = sem_pores(img, PoreThreshold::at(128), 1);
    CHECK(stats.count == 0);
    CHECK(stats.porosity == 0);
}

TEST_CASE("pores: three disjoint disks") {
    auto img = blank(128, 128);
    draw_disk(img, 30, 30, 10);
    draw_disk(img, 30, 90, 10);
    draw_disk(img, 90, 60, 10);
    auto stats = sem_pores(img, PoreThreshold::at(128), 1);
    REQUIRE(stats.count == 3);
    double expect = M_PI * 100.0;
    double raster = disk_pixel_count(img, 30, 30, 10);
    for (const auto& p : stats.pores) {
        CHECK(std::abs(p.area_px - expect) / expect < 0.05);
        CHECK(p.area_px == doctest::Approx(raster));  // library counts the same raster
        CHECK(p.equivalent_diameter_px ==
              doctest::Approx(2 * std::sqrt(p.area_px / M_PI)).epsilon(1e-12));
        CHECK_FALSE(p.boundary.empty());
    }
    CHECK(stats.porosity == doctest::Approx(3 * raster / (128.0 * 128.0)).epsilon(1e-12));
    // centroids in row-major discovery order
    CHECK(stats.pores[0].centroid_r == doctest::Approx(30).epsilon(0.01));
    CHECK(stats.pores[0].centroid_c == doctest::Approx(30).epsilon(0.01));
}

TEST_CASE("pores: diagonal touch merges under 8-connectivity") {
    auto img = blank(8, 8);
    img.at(2, 2) = 0;
    img.at(3, 3) = 0;
    auto stats = sem_pores(img, PoreThreshold::at(128), 1);
    CHECK(stats.count == 1);
    CHECK(stats.pores[0].area_px == 2);
}

TEST_CASE("pores: min_area filter and boundary membership") {
    auto img = blank(32, 32);
    draw_disk(img, 16, 16, 6);
    img.at(2, 2) = 0;  // single-pixel speck
    auto stats = sem_pores(img, PoreThreshold::at(128), 4);
    REQUIRE(stats.count == 1);
    for (auto [r, c] : stats.pores[0].boundary) {
        CHECK(img.at(r, c) == 0);
        bool has_outside = false;
        const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            int nr = r + dr[k], nc = c + dc[k];
            has_outside |= nr < 0 || nr >= 32 || nc < 0 || nc >= 32 || img.at(nr, nc) != 0;
        }
        CHECK(has_outside);
    }
}

TEST_CASE("pores: otsu splits a bimodal image like the fixed threshold") {
    StreamRng rng(3, "otsu");
    auto img = blank(64, 64);
    for (auto& p : img.px) {
        double v = rng.uniform() < 0.3 ? rng.normal(40, 8) : rng.normal(200, 12);
        p = std::uint8_t(std::clamp(v, 0.0, 255.0));
    }
    int t = otsu_threshold(img);
    CHECK(t > 60);
    CHECK(t < 180);
    auto stats = sem_pores(img, PoreThreshold::otsu(), 1);
    double dark = 0;
    for (auto p : img.px) dark += (p < t) ? 1 : 0;
    CHECK(stats.porosity == doctest::Approx(dark / img.px.size()).epsilon(1e-12));
}

TEST_CASE("eds_convert: the Cu/Al fixture and identities") {
    Composition c;
    c.basis = CompositionBasis::weight;
    c.entries = {{"Cu", 63.546, 50.0}, {"Al", 26.982, 50.0}};
    auto at = eds_convert(c, CompositionBasis::atomic);
    REQUIRE(at.entries.size() == 2);
    CHECK(at.basis == CompositionBasis::atomic);
    CHECK(std::abs(at.entries[0].fraction - 29.80) < 0.01);
    CHECK(std::abs(at.entries[1].fraction - 70.20) < 0.01);

    auto back = eds_convert(at, CompositionBasis::weight);
    for (std::size_t i = 0; i < c.entries.size(); ++i)
        CHECK(std::abs(back.entries[i].fraction - c.entries[i].fraction) < 1e-9);

    Composition single;
    single.entries = {{"Fe", 55.845, 100.0}};
    auto conv = eds_convert(single, CompositionBasis::atomic);
    CHECK(conv.entries[0].fraction == doctest::Approx(100.0));

    auto same = eds_convert(c, CompositionBasis::weight);
    CHECK(same.entries[0].fraction == 50.0);
}

TEST_CASE("eds_convert: random round trips sum to 100") {
    StreamRng rng(17, "eds");
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + int(rng.next_u64() % 4);
        Composition c;
        c.basis = CompositionBasis::weight;
        double total = 0;
        for (int i = 0; i < n; ++i) {
            double f = rng.uniform(0.05, 1.0);
            total += f;
            c.entries.push_back({"e" + std::to_string(i), rng.uniform(6, 240), f});
        }
        for (auto& e : c.entries) e.fraction *= 100.0 / total;
        // force an exact-100 sum before converting
        double s = 0;
        for (auto& e : c.entries) s += e.fraction;
        c.entries.back().fraction += 100.0 - s;

        auto at = eds_convert(c, CompositionBasis::atomic);
        double sum = 0;
        for (auto& e : at.entries) sum += e.fraction;
        CHECK(std::abs(sum - 100.0) < 1e-9);
        auto back = eds_convert(at, CompositionBasis::weight);
        for (std::size_t i = 0; i < c.entries.size(); ++i)
            CHECK(std::abs(back.entries[i].fraction - c.entries[i].fraction) < 1e-9);
    }
}

TEST_CASE("eds_convert: error paths") {
    Composition bad;
    bad.entries = {{"X", 0.0, 100.0}};
    CHECK_THROWS_WITH_AS(eds_convert(bad, CompositionBasis::atomic), doctest::Contains("mass"),
                         Error);
    Composition dup;
    dup.entries = {{"Cu", 63.5, 50}, {"Cu", 63.5, 50}};
    CHECK_THROWS_AS(eds_convert(dup, CompositionBasis::atomic), Error);
    Composition off;
    off.entries = {{"Cu", 63.5, 70}};
    CHECK_THROWS_AS(eds_convert(off, CompositionBasis::atomic), Error);
}

TEST_CASE("eds_snr: formula, conventions and errors") {
    Spectrum s;
    for (int i = 0; i < 100; ++i) {
        s.x.push_back(i);
        s.y.push_back(10.0);
    }
    // flat: 0/0 -> 0
    CHECK(eds_snr(s, {40, 60}, {0, 30}) == 0.0);

    // peak 100 over bg mean 10, std 5: bg alternates 5/15
    for (int i = 0; i < 30; ++i) s.y[i] = (i % 2 == 0) ? 5.0 : 15.0;
    s.y[50] = 100.0;
    CHECK(eds_snr(s, {40, 60}, {0, 29}) == doctest::Approx(18.0));

    // zero stddev with signal -> infinity
    Spectrum flatbg;
    for (int i = 0; i < 50; ++i) {
        flatbg.x.push_back(i);
        flatbg.y.push_back(1.0);
    }
    flatbg.y[40] = 7.0;
    CHECK(std::isinf(eds_snr(flatbg, {35, 45}, {0, 20})));

    CHECK_THROWS_WITH_AS(eds_snr(s, {400, 500}, {0, 29}), doctest::Contains("window"), Error);
}

TEST_CASE("ebsd: uniform map is one grain without boundaries") {
    OrientationMap m;
    m.rows = 16;
    m.cols = 16;
    m.theta.assign(256, 42.0);
    auto g = ebsd_grains(m, 5, 15);
    CHECK(g.grain_count == 1);
    for (auto b : g.boundary) CHECK(b == BoundaryKind::none);
    std::int64_t mass = 0;
    for (auto v : g.misorientation_histogram) mass += v;
    CHECK(mass == 0);
}

TEST_CASE("ebsd: two half planes split into two grains with high-angle boundary") {
    OrientationMap m;
    m.rows = 10;
    m.cols = 20;
    m.theta.resize(200);
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 20; ++c) m.at(r, c) = c < 10 ? 0.0 : 30.0;
    auto g = ebsd_grains(m, 5, 15);
    CHECK(g.grain_count == 2);
    int boundary_px = 0;
    for (int r = 0; r < 10; ++r) {
        for (int c = 0; c < 20; ++c) {
            auto b = g.boundary[std::size_t(r) * 20 + c];
            if (c == 9 || c == 10) {
                CHECK(b == BoundaryKind::high_angle);
                ++boundary_px;
            } else {
                CHECK(b == BoundaryKind::none);
            }
        }
    }
    CHECK(g.misorientation_histogram[30] == boundary_px);
    std::int64_t mass = 0;
    for (auto v : g.misorientation_histogram) mass += v;
    CHECK(mass == boundary_px);
}

TEST_CASE("ebsd: wrap-around misorientation uses the shorter arc") {
    OrientationMap m;
    m.rows = 2;
    m.cols = 2;
    // 178 vs 2 degrees: misorientation is 4, not 176
    m.theta = {178, 178, 2, 2};
    auto g = ebsd_grains(m, 5, 15);
    CHECK(g.grain_count == 1);
}

TEST_CASE("ebsd: labels invariant under a global offset mod 180") {
    StreamRng rng(9, "ebsd");
    OrientationMap m;
    m.rows = 24;
    m.cols = 24;
    m.theta.resize(576);
    for (auto& t : m.theta) t = std::floor(rng.uniform(0, 6)) * 30.0;
    auto base = ebsd_grains(m, 5, 15);
    OrientationMap shifted = m;
    for (auto& t : shifted.theta) t = std::fmod(t + 77.0, 180.0);
    auto moved = ebsd_grains(shifted, 5, 15);
    REQUIRE(base.labels.size() == moved.labels.size());
    CHECK(base.grain_count == moved.grain_count);
    for (std::size_t i = 0; i < base.labels.size(); ++i)
        CHECK(base.labels[i] == moved.labels[i]);
    CHECK(base.misorientation_histogram == moved.misorientation_histogram);
}

TEST_CASE("ebsd: low-angle vs high-angle classification") {
    OrientationMap m;
    m.rows = 4;
    m.cols = 8;
    m.theta.resize(32);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 8; ++c) m.at(r, c) = c < 4 ? 0.0 : 8.0;  // 8-degree boundary
    auto g = ebsd_grains(m, 5, 15);
    CHECK(g.grain_count == 2);
    bool any_low = false;
    for (auto b : g.boundary) {
        CHECK(b != BoundaryKind::high_angle);
        any_low |= b == BoundaryKind::low_angle;
    }
    CHECK(any_low);
}

TEST_CASE("ipf: colors are injective per orientation") {
    OrientationMap m;
    m.rows = 1;
    m.cols = 3;
    m.theta = {0.0, 0.0, 90.0};
    auto img = ipf_colormap(m);
    CHECK(img.at(0, 0) == std::array<std::uint8_t, 3>{255, 0, 0});  // hue 0 = red
    CHECK(img.at(0, 0) == img.at(0, 1));
    CHECK(img.at(0, 2) != img.at(0, 0));
}

TEST_CASE("ipf: theta and theta+90 are opposite hues") {
    auto hue_of = [](const std::array<std::uint8_t, 3>& rgb) {
        double r = rgb[0] / 255.0, g = rgb[1] / 255.0, b = rgb[2] / 255.0;
        double mx = std::max({r, g, b}), mn = std::min({r, g, b});
        double d = mx - mn;
        if (d == 0) return 0.0;
        double h;
        if (mx == r)
            h = std::fmod((g - b) / d, 6.0);
        else if (mx == g)
            h = (b - r) / d + 2.0;
        else
            h = (r - g) / d + 4.0;
        return std::fmod(h * 60.0 + 360.0, 360.0);
    };
    for (double theta : {10.0, 40.0, 85.0}) {
        OrientationMap m;
        m.rows = 1;
        m.cols = 2;
        m.theta = {theta, theta + 90.0};
        auto img = ipf_colormap(m);
        double d = std::abs(hue_of(img.at(0, 0)) - hue_of(img.at(0, 1)));
        d = std::min(d, 360.0 - d);
        CHECK(std::abs(d - 180.0) < 1.5);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"
#include "aurakit/core/rng.hpp"

using namespace aurakit;
using namespace aurakit::analysis;

namespace {

// absorptive Lorentzian with unit area: (gamma/pi) / ((x-mu)^2 + gamma^2)
double lorentz(double x, double mu, double gamma) {
    return (gamma / M_PI) / ((x - mu) * (x - mu) + gamma * gamma);
}

ComplexSpectrum synth_nmr(const std::vector<std::array<double, 3>>& peaks,  // mu, gamma, area
                          double phi0, double phi1, int n = 2048) {
    ComplexSpectrum cs;
    cs.x.resize(n);
    cs.v.resize(n);
    const double lo = 0.0, hi = 10.0;
    for (int i = 0; i < n; ++i) cs.x[i] = lo + (hi - lo) * i / (n - 1);
    const double mid = 0.5 * (lo + hi), span = hi - lo;
    for (int i = 0; i < n; ++i) {
        double re = 0;
        for (const auto& p : peaks) re += p[2] * lorentz(cs.x[i], p[0], p[1]);
        double theta = (phi0 + phi1 * (cs.x[i] - mid) / span) * M_PI / 180.0;
        // the synthesis error is the same operator nmr_phase applies, so a
        // correction with the negated angles recovers the absorptive base
        cs.v[i] = std::complex<double>(re, 0.0) *
                  std::complex<double>(std::cos(theta), -std::sin(theta));
    }
    return cs;
}

double sum_abs_im(const ComplexSpectrum& cs) {
    double s = 0;
    for (auto& v : cs.v) s += std::abs(v.imag());
    return s;
}

double sum_abs_re(const ComplexSpectrum& cs) {
    double s = 0;
    for (auto& v : cs.v) s += std::abs(v.real());
    return s;
}

}  // namespace

TEST_CASE("nmr_phase: zero angles are the identity") {
    auto cs = synth_nmr({{3, 0.05, 1}}, 25, 0);
    auto out = nmr_phase(cs, 0, 0, 5.0);
    for (std::size_t i = 0; i < cs.v.size(); ++i) CHECK(out.v[i] == cs.v[i]);
}

TEST_CASE("nmr_phase: correcting the synthesis phase flattens Im") {
    auto cs = synth_nmr({{3, 0.05, 1}, {6, 0.08, 2}}, 30, 0);
    auto out = nmr_phase(cs, -30, 0, 5.0);
    CHECK(sum_abs_im(out) < 1e-9 * sum_abs_re(out));
}

TEST_CASE("nmr_phase: group inverse restores the input") {
    auto cs = synth_nmr({{4, 0.1, 1}}, 17, 9);
    auto twice = nmr_phase(nmr_phase(cs, 33, -21, 4.0), -33, 21, 4.0);
    for (std::size_t i = 0; i < cs.v.size(); ++i) {
        CHECK(std::abs(twice.v[i].real() - cs.v[i].real()) < 1e-12);
        CHECK(std::abs(twice.v[i].imag() - cs.v[i].imag()) < 1e-12);
    }
}

TEST_CASE("nmr_phase: composition equals the summed angles") {
    auto cs = synth_nmr({{4, 0.1, 1}}, 0, 0);
    auto a = nmr_phase(nmr_phase(cs, 10, 5, 5.0), 20, 7, 5.0);
    auto b = nmr_phase(cs, 30, 12, 5.0);
    for (std::size_t i = 0; i < cs.v.size(); ++i)
        CHECK(std::abs(a.v[i] - b.v[i]) < 1e-12);
}

TEST_CASE("nmr autophase: absorptive input yields zero phases") {
    auto cs = synth_nmr({{3, 0.05, 1}, {7, 0.05, 1}}, 0, 0);
    auto [p0, p1] = nmr_autophase(cs);
    CHECK(std::abs(p0) < 0.5);
    CHECK(std::abs(p1) < 0.5);
}

TEST_CASE("nmr autophase: recovers a pure zero-order error") {
    auto cs = synth_nmr({{2.5, 0.04, 1}, {5.5, 0.06, 2}, {8, 0.05, 1}}, 47, 0);
    auto [p0, p1] = nmr_autophase(cs);
    CHECK(std::abs(p0 - (-47)) < 0.5);
    CHECK(std::abs(p1) < 0.5);
}

TEST_CASE("nmr autophase: recovers mixed zero- and first-order errors") {
    auto cs = synth_nmr({{2, 0.04, 1}, {8, 0.04, 1}}, 10, 20);
    auto [p0, p1] = nmr_autophase(cs);
    CHECK(std::abs(p0 - (-10)) < 1.0);
    CHECK(std::abs(p1 - (-20)) < 1.0);
}

TEST_CASE("nmr integrate: 3:2:1 Lorentzian areas") {
    auto cs = synth_nmr({{2, 0.03, 3}, {5, 0.05, 2}, {8, 0.04, 1}}, 0, 0, 4096);
    Spectrum s;
    s.x = cs.x;
    for (auto& v : cs.v) s.y.push_back(v.real());
    auto r = nmr_integrate(s, {{1.5, 2.5}, {4.5, 5.5}, {7.5, 8.5}}, 2, 1.0);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(3).epsilon(0.02));
    CHECK(r[1] == doctest::Approx(2).epsilon(0.02));
    CHECK(r[2] == doctest::Approx(1).epsilon(0.02));
}

TEST_CASE("nmr integrate: single range scales to the reference value") {
    auto cs = synth_nmr({{5, 0.05, 4}}, 0, 0);
    Spectrum s;
    s.x = cs.x;
    for (auto& v : cs.v) s.y.push_back(v.real());
    auto r = nmr_integrate(s, {{4, 6}}, 0, 1.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.0));
}

TEST_CASE("nmr integrate: empty range throws") {
    Spectrum s;
    s.x = {1, 2, 3};
    s.y = {1, 1, 1};
    CHECK_THROWS_WITH_AS(nmr_integrate(s, {{10, 11}}, 0, 1.0), doctest::Contains("range"),
                         Error);
}

namespace {

Spectrum logistic_tga(const std::vector<std::array<double, 3>>& steps,  // center, width, loss
                      double t0 = 300, double t1 = 900, double dt = 0.5) {
    Spectrum s;
    s.x_unit = "K";
    s.y_unit = "%";
    for (double t = t0; t <= t1 + 1e-9; t += dt) {
        double m = 100.0;
        for (const auto& st : steps) m -= st[2] / (1.0 + std::exp(-(t - st[0]) / st[1]));
        s.x.push_back(t);
        s.y.push_back(m);
    }
    return s;
}

}  // namespace

TEST_CASE("tga: flat curve has no steps") {
    Spectrum s = logistic_tga({});
    CHECK(tga_steps(s, std::nullopt, 5, 1.0).empty());
}

TEST_CASE("tga: single logistic step matches the closed-form onset") {
    // mass 100 -> 80, center 600 K, width parameter 10 K. The tangent at the
    // inflection has slope -loss/(4w), so the plateau intersection sits at
    // Tc - 2w = 580 K.
    Spectrum s = logistic_tga({{600, 10, 20}});
    auto steps = tga_steps(s, std::nullopt, 5, 5.0);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].mass_loss_pct == doctest::Approx(20.0).epsilon(0.025));
    CHECK(std::abs(steps[0].onset_temperature - 580.0) < 2.0);
    CHECK(std::abs(steps[0].dtg_peak_temperature - 600.0) < 2.0);
    CHECK_FALSE(steps[0].enthalpy.has_value());
}

TEST_CASE("tga: two separated steps with the right losses") {
    Spectrum s = logistic_tga({{500, 8, 20}, {750, 8, 30}});
    auto steps = tga_steps(s, std::nullopt, 5, 5.0);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].mass_loss_pct == doctest::Approx(20).epsilon(0.01 / 0.2));
    CHECK(std::abs(steps[0].mass_loss_pct - 20) < 1.0);
    CHECK(std::abs(steps[1].mass_loss_pct - 30) < 1.0);
    CHECK(steps[0].onset_temperature <= steps[0].dtg_peak_temperature);
}

TEST_CASE("tga: enthalpy integrates the heat-flow channel") {
    Spectrum s = logistic_tga({{600, 10, 20}});
    Spectrum hf;
    hf.x = s.x;
    for (double t : s.x) {
        double u = (t - 600) / 15.0;
        hf.y.push_back(5.0 * std::exp(-0.5 * u * u));  // W/g-style peak
    }
    auto steps = tga_steps(s, hf, 5, 5.0);
    REQUIRE(steps.size() == 1);
    REQUIRE(steps[0].enthalpy.has_value());
    // full gaussian integral \approx 5 * 15 * sqrt(2 pi); window clipping
    // loses only the far tails
    double expect = 5.0 * 15.0 * std::sqrt(2 * M_PI);
    CHECK(*steps[0].enthalpy == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("tga: non-monotonic temperature rejected") {
    Spectrum s;
    s.x = {300, 301, 301, 302, 303};
    s.y = {100, 100, 100, 100, 100};
    CHECK_THROWS_WITH_AS(tga_steps(s, std::nullopt, 3, 1.0), doctest::Contains("temperature"),
                         Error);
}

TEST_CASE("afm level: removes an exact plane") {
    HeightMap h;
    h.rows = 40;
    h.cols = 50;
    h.z.resize(2000);
    for (int r = 0; r < h.rows; ++r)
        for (int c = 0; c < h.cols; ++c) h.at(r, c) = 3.0 + 2.0 * c - 1.0 * r;
    auto lv = afm_level_plane(h);
    for (double z : lv.z) CHECK(std::abs(z) < 1e-9);
}

TEST_CASE("afm level: idempotent") {
    StreamRng rng(5, "afm");
    HeightMap h;
    h.rows = 32;
    h.cols = 32;
    for (int i = 0; i < 1024; ++i) h.z.push_back(rng.normal());
    auto l1 = afm_level_plane(h);
    auto l2 = afm_level_plane(l1);
    for (std::size_t i = 0; i < l1.z.size(); ++i) CHECK(std::abs(l1.z[i] - l2.z[i]) < 1e-12);
}

TEST_CASE("afm level: plane plus sinusoid leaves the sinusoid") {
    HeightMap h;
    h.rows = 64;
    h.cols = 64;
    h.z.resize(4096);
    auto wave = [](int r, int c) {
        return std::sin(2 * M_PI * c / 8.0) * std::cos(2 * M_PI * r / 8.0);
    };
    for (int r = 0; r < h.rows; ++r)
        for (int c = 0; c < h.cols; ++c) h.at(r, c) = 1 + 0.5 * c - 0.25 * r + wave(r, c);
    auto lv = afm_level_plane(h);
    // the full-period sinusoid is orthogonal to the plane basis
    for (int r = 0; r < h.rows; ++r)
        for (int c = 0; c < h.cols; ++c) CHECK(std::abs(lv.at(r, c) - wave(r, c)) < 1e-9);
}

TEST_CASE("afm roughness: constant and two-point maps") {
    HeightMap h;
    h.rows = 10;
    h.cols = 10;
    h.z.assign(100, 4.2);
    auto r = afm_roughness(h);
    CHECK(r.ra < 1e-12);
    CHECK(r.rq < 1e-12);

    for (int i = 0; i < 100; ++i) h.z[i] = (i % 2 == 0) ? 1.5 : -1.5;
    r = afm_roughness(h);
    CHECK(r.ra == doctest::Approx(1.5));
    CHECK(r.rq == doctest::Approx(1.5));
}

TEST_CASE("afm roughness: gaussian surface moments") {
    StreamRng rng(11, "gauss-surface");
    const double s = 2.5;
    HeightMap h;
    h.rows = 500;
    h.cols = 500;
    h.z.resize(std::size_t(h.rows) * h.cols);
    for (auto& z : h.z) z = s * rng.normal();
    auto r = afm_roughness(h);
    CHECK(r.rq == doctest::Approx(s).epsilon(0.02));
    CHECK(r.ra == doctest::Approx(s * std::sqrt(2.0 / M_PI)).epsilon(0.02));
    CHECK(r.ra <= r.rq);
}

TEST_CASE("afm roughness: Ra <= Rq on random maps") {
    StreamRng rng(23, "ra-rq");
    for (int trial = 0; trial < 200; ++trial) {
        HeightMap h;
        h.rows = 2 + int(rng.next_u64() % 12);
        h.cols = 2 + int(rng.next_u64() % 12);
        h.z.resize(std::size_t(h.rows) * h.cols);
        for (auto& z : h.z) z = rng.uniform(-5, 5);
        auto r = afm_roughness(h);
        CHECK(r.ra <= r.rq + 1e-12);
    }
}

TEST_CASE("afm profile: plane sampling is exact; degenerate segment rejected") {
    HeightMap h;
    h.rows = 16;
    h.cols = 16;
    h.z.resize(256);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) h.at(r, c) = double(c);
    auto prof = afm_profile(h, {0.0, 7.0}, {15.0, 7.0}, 31);
    REQUIRE(prof.x.size() == 31);
    for (std::size_t i = 0; i < prof.x.size(); ++i)
        CHECK(std::abs(prof.y[i] - prof.x[i]) < 1e-9);  // z = x along the line

    CHECK_THROWS_AS(afm_profile(h, {3, 3}, {3, 3}, 5), Error);
    CHECK_THROWS_AS(afm_profile(h, {-1, 0}, {5, 5}, 5), Error);
}

TEST_CASE("afm profile: step edge crossed at the geometric intersection") {
    HeightMap h;
    h.rows = 32;
    h.cols = 32;
    h.z.resize(1024);
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) h.at(r, c) = c >= 16 ? 1.0 : 0.0;
    auto prof = afm_profile(h, {2.0, 2.0}, {30.0, 30.0}, 57);
    // diagonal hits x = 15.5 (the bilinear midpoint) at distance f where
    // x(f) = 2 + 28 f
    double expect_d = (15.5 - 2.0) / 28.0 * std::hypot(28.0, 28.0);
    int cross = -1;
    for (std::size_t i = 0; i + 1 < prof.y.size(); ++i)
        if (prof.y[i] < 0.5 && prof.y[i + 1] >= 0.5) cross = int(i);
    REQUIRE(cross >= 0);
    double d_lo = prof.x[cross], d_hi = prof.x[cross + 1];
    double sample_step = prof.x[1] - prof.x[0];
    CHECK(expect_d >= d_lo - sample_step);
    CHECK(expect_d <= d_hi + sample_step);
}

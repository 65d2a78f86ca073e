#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"
#include "aurakit/core/rng.hpp"
#include "oracles.hpp"

using namespace aurakit;
using namespace aurakit::analysis;

namespace {

Spectrum make_spectrum(double x0, double x1, int n,
                       const std::function<double(double)>& f) {
    Spectrum s;
    s.x_unit = "nm";
    for (int i = 0; i < n; ++i) {
        double x = x0 + (x1 - x0) * i / (n - 1);
        s.x.push_back(x);
        s.y.push_back(f(x));
    }
    return s;
}

double gauss(double x, double a, double mu, double sg) {
    double t = (x - mu) / sg;
    return a * std::exp(-0.5 * t * t);
}

}  // namespace

TEST_CASE("baseline: zero input stays zero") {
    auto s = make_spectrum(0, 100, 101, [](double) { return 0.0; });
    auto r = baseline_asls(s, 1e5, 0.01, 10);
    for (std::size_t i = 0; i < r.baseline.size(); ++i) {
        CHECK(r.baseline[i] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.corrected[i] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("baseline: reproduces a peak-free linear signal") {
    auto s = make_spectrum(0, 500, 501, [](double x) { return 2.0 + 0.01 * x; });
    auto r = baseline_asls(s, 1e5, 0.01, 10);
    double range = 0.01 * 500;
    double worst = 0;
    for (std::size_t i = 0; i < s.y.size(); ++i)
        worst = std::max(worst, std::abs(r.baseline[i] - s.y[i]));
    CHECK(worst < 1e-3 * range);
}

TEST_CASE("baseline: corrected + baseline reconstructs y exactly") {
    StreamRng rng(3, "bl");
    auto s = make_spectrum(0, 300, 301, [&](double x) {
        return 0.3 + 0.002 * x + gauss(x, 1.2, 120, 8) + 0.01 * rng.normal();
    });
    auto r = baseline_asls(s, 1e5, 0.01, 10);
    for (std::size_t i = 0; i < s.y.size(); ++i)
        CHECK(std::abs(r.baseline[i] + r.corrected[i] - s.y[i]) < 1e-12);
}

TEST_CASE("baseline: peak area on a quadratic baseline within 5%") {
    // lambda chosen so the smoother's length scale (~lambda^(1/4) samples)
    // comfortably exceeds the 15-sample peak width
    const double a = 1.0, mu = 500, sg = 15;
    auto s = make_spectrum(300, 700, 401, [&](double x) {
        double u = (x - 300) / 400.0;
        return 0.5 + 0.3 * u + 0.4 * u * u + gauss(x, a, mu, sg);
    });
    auto r = baseline_asls(s, 1e6, 0.001, 10);
    // integrate the corrected peak over +-5 sigma
    double area = 0;
    for (std::size_t i = 0; i + 1 < s.x.size(); ++i)
        if (s.x[i] >= mu - 5 * sg && s.x[i + 1] <= mu + 5 * sg)
            area += 0.5 * (r.corrected[i] + r.corrected[i + 1]) * (s.x[i + 1] - s.x[i]);
    double expect = a * sg * std::sqrt(2 * M_PI);
    CHECK(area == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("baseline: idempotent on smooth input") {
    // a linear signal lies in the null space of the roughness penalty, so it
    // is an exact fixpoint of the smoother
    auto s = make_spectrum(0, 200, 201, [&](double x) { return 1.0 + 0.005 * x; });
    auto r1 = baseline_asls(s, 1e5, 0.01, 10);
    Spectrum b{s.x, r1.baseline, s.x_unit, s.y_unit};
    auto r2 = baseline_asls(b, 1e5, 0.01, 10);
    for (std::size_t i = 0; i < b.y.size(); ++i)
        CHECK(std::abs(r2.baseline[i] - b.y[i]) < 1e-9);
}

TEST_CASE("baseline: rejects bad arguments") {
    auto s = make_spectrum(0, 10, 11, [](double) { return 1.0; });
    CHECK_THROWS_AS(baseline_asls(s, -1, 0.01, 10), Error);
    CHECK_THROWS_AS(baseline_asls(s, 1e5, 1.5, 10), Error);
    CHECK_THROWS_AS(baseline_asls(s, 1e5, 0.01, 0), Error);
}

TEST_CASE("peaks: constant spectrum has none") {
    auto s = make_spectrum(0, 10, 50, [](double) { return 3.0; });
    CHECK(detect_peaks(s, 0.0, 1).empty());
}

TEST_CASE("peaks: single triangle peak") {
    Spectrum s;
    for (int i = 0; i < 21; ++i) {
        s.x.push_back(i);
        s.y.push_back(i <= 10 ? i : 20 - i);
    }
    auto peaks = detect_peaks(s, 0.0, 1);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].index == 10);
    CHECK(peaks[0].height == 10);
    CHECK(peaks[0].prominence == 10);
}

TEST_CASE("peaks: prominence filter keeps only the taller gaussian") {
    auto s = make_spectrum(0, 100, 401, [](double x) {
        return gauss(x, 1.0, 30, 5) + gauss(x, 0.3, 70, 5);
    });
    auto peaks = detect_peaks(s, 0.5, 1);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].position == doctest::Approx(30).epsilon(0.01));
}

TEST_CASE("peaks: plateau counts once at its left edge") {
    Spectrum s;
    std::vector<double> y = {0, 1, 2, 2, 2, 1, 0};
    for (std::size_t i = 0; i < y.size(); ++i) {
        s.x.push_back(double(i));
        s.y.push_back(y[i]);
    }
    auto peaks = detect_peaks(s, 0.0, 1);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].index == 2);
}

TEST_CASE("peaks: min_distance keeps the higher, tie to the lower index") {
    Spectrum s;
    std::vector<double> y = {0, 5, 0, 7, 0, 7, 0, 1, 0};
    for (std::size_t i = 0; i < y.size(); ++i) {
        s.x.push_back(double(i));
        s.y.push_back(y[i]);
    }
    auto peaks = detect_peaks(s, 0.0, 3);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].index == 3);  // beats index 1 (closer than 3) and ties with 5
    CHECK(peaks[1].index == 7);
}

TEST_CASE("peaks: agrees with the brute-force oracle on random spectra") {
    StreamRng rng(99, "peaks");
    for (int trial = 0; trial < 120; ++trial) {
        int n = 8 + int(rng.next_u64() % 505);
        Spectrum s;
        double walk = 0;
        for (int i = 0; i < n; ++i) {
            s.x.push_back(i);
            // mix of integer plateaus and smooth walk to exercise ties
            if (rng.uniform() < 0.3)
                walk = std::floor(rng.uniform(0, 6));
            else
                walk += rng.normal();
            s.y.push_back(walk);
        }
        double min_prom = rng.uniform(0, 2);
        int min_dist = 1 + int(rng.next_u64() % 9);
        auto got = detect_peaks(s, min_prom, min_dist);
        auto want = oracles::detect_peaks_bruteforce(s, min_prom, min_dist);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].index == want[i].index);
            CHECK(got[i].prominence == doctest::Approx(want[i].prominence).epsilon(1e-12));
        }
    }
}

TEST_CASE("gaussian fit: exact single-component recovery at zero noise") {
    const double a = 2.0, mu = 450, sg = 10, c = 0.1;
    auto s = make_spectrum(380, 520, 281,
                           [&](double x) { return c + gauss(x, a, mu, sg); });
    auto fits = fit_gaussians(s, 380, 520, 1);
    REQUIRE(fits.size() == 1);
    CHECK(fits[0].converged);
    CHECK(std::abs(fits[0].amplitude - a) / a < 1e-6);
    CHECK(std::abs(fits[0].center - mu) / mu < 1e-6);
    CHECK(std::abs(fits[0].sigma - sg) / sg < 1e-6);
    CHECK(std::abs(fits[0].offset - c) / c < 1e-4);
    CHECK(fits[0].rmse < 1e-8 * 2.1);
}

TEST_CASE("gaussian fit: resolves the EDS line overlap from rough inits") {
    // the 6.35/6.49 keV pair merges into a single local maximum, so the
    // fixture supplies coarse starting values as a caller would
    const double mu1 = 6.35, mu2 = 6.49, sg = 0.06;
    auto s = make_spectrum(6.0, 6.9, 181, [&](double x) {
        return gauss(x, 1.0, mu1, sg) + gauss(x, 0.7, mu2, sg);
    });
    std::vector<GaussianInit> init{{1.2, 6.30, 0.08}, {0.5, 6.55, 0.08}};
    auto fits = fit_gaussians(s, 6.0, 6.9, 2, init);
    REQUIRE(fits.size() == 2);
    CHECK(std::abs(fits[0].center - mu1) < 0.01);
    CHECK(std::abs(fits[1].center - mu2) < 0.01);
    CHECK(fits[0].amplitude == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(fits[1].amplitude == doctest::Approx(0.7).epsilon(1e-4));
}

TEST_CASE("gaussian fit: auto-init handles two separated components") {
    auto s = make_spectrum(0, 100, 401, [&](double x) {
        return 0.2 + gauss(x, 1.0, 30, 4) + gauss(x, 0.5, 70, 6);
    });
    auto fits = fit_gaussians(s, 0, 100, 2);
    REQUIRE(fits.size() == 2);
    CHECK(fits[0].center == doctest::Approx(30).epsilon(1e-6));
    CHECK(fits[1].center == doctest::Approx(70).epsilon(1e-6));

    // the merged pair without init reports DegenerateInit
    auto merged = make_spectrum(6.0, 6.9, 181, [&](double x) {
        return gauss(x, 1.0, 6.35, 0.06) + gauss(x, 0.7, 6.49, 0.06);
    });
    CHECK_THROWS_WITH_AS(fit_gaussians(merged, 6.0, 6.9, 2),
                         doctest::Contains("fewer detectable peaks"), Error);
}

TEST_CASE("gaussian fit: degenerate init and window errors") {
    auto flat = make_spectrum(0, 10, 101, [](double x) { return 0.2 * x; });
    CHECK_THROWS_WITH_AS(fit_gaussians(flat, 0, 10, 1), doctest::Contains("peaks"), Error);
    auto s = make_spectrum(0, 10, 101, [](double x) { return gauss(x, 1, 5, 1); });
    CHECK_THROWS_AS(fit_gaussians(s, 4.9, 5.1, 1), Error);  // too few samples
}

TEST_CASE("gaussian fit: analytic gradient matches finite differences") {
    auto s = make_spectrum(300, 700, 401, [&](double x) {
        return 0.05 + gauss(x, 1.5, 480, 22) + gauss(x, 0.6, 560, 18);
    });
    auto fits = fit_gaussians(s, 300, 700, 2);
    REQUIRE(fits.size() == 2);
    // nudge off the optimum so the gradient is well away from zero
    std::vector<double> params;
    for (const auto& f : fits) {
        params.push_back(f.amplitude * 1.01);
        params.push_back(f.center * 1.001);
        params.push_back(f.sigma * 1.01);
    }
    params.push_back(fits[0].offset + 0.01);

    auto grad = gaussian_cost_gradient(s, 300, 700, params);
    for (std::size_t i = 0; i < params.size(); ++i) {
        double h = std::max(1e-7, 1e-7 * std::abs(params[i]));
        auto up = params, dn = params;
        up[i] += h;
        dn[i] -= h;
        double fd = (gaussian_cost(s, 300, 700, up) - gaussian_cost(s, 300, 700, dn)) / (2 * h);
        double denom = std::max({std::abs(fd), std::abs(grad[i]), 1e-10});
        CHECK(std::abs(grad[i] - fd) / denom < 1e-4);
    }
}

TEST_CASE("ftir assignment examples") {
    const auto& bands = default_ftir_bands();

    auto assign_one = [&](double pos, double tol) {
        std::vector<Peak> pk{{pos, 1.0, 1.0, 0}};
        return ftir_assign(pk, bands, tol).at(0);
    };

    auto carbonyl = assign_one(1715, 0);
    REQUIRE(carbonyl.band.has_value());
    CHECK(carbonyl.band->group == "C=O stretch");

    auto nowhere = assign_one(5000, 0);
    CHECK_FALSE(nowhere.band.has_value());

    // overlapping bands: the narrower range wins
    auto tie = assign_one(1660, 0);
    REQUIRE(tie.band.has_value());
    CHECK(tie.band->group == "C=C stretch (alkene)");
}

TEST_CASE("ftir: tolerance matching picks the nearest band") {
    std::vector<FtirBand> table = {{"a", 1000, 1100}, {"b", 1140, 1200}};
    std::vector<Peak> pk{{1115, 1, 1, 0}};
    auto r = ftir_assign(pk, table, 30);
    REQUIRE(r[0].band.has_value());
    CHECK(r[0].band->group == "a");  // distance 15 beats 25
    std::vector<Peak> pk2{{1120, 1, 1, 0}};
    auto r2 = ftir_assign(pk2, table, 30);
    REQUIRE(r2[0].band.has_value());
    CHECK(r2[0].band->group == "b");  // equal distance 20; narrower range wins
}

TEST_CASE("ftir: shipped table has exactly 20 entries") {
    CHECK(default_ftir_bands().size() == 20);
}

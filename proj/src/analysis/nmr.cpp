#include <algorithm>
#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

void require_complex(const ComplexSpectrum& cs) {
    if (cs.x.size() != cs.v.size() || cs.x.size() < 2)
        throw Error("InvalidSpectrum", "complex spectrum needs |x| == |values| >= 2");
}

double axis_span(const ComplexSpectrum& cs) { return cs.x.back() - cs.x.front(); }

double axis_mid(const ComplexSpectrum& cs) { return 0.5 * (cs.x.front() + cs.x.back()); }

// sum |Im| after applying (phi0, phi1) around the axis midpoint
double imag_l1(const ComplexSpectrum& cs, double phi0, double phi1) {
    const double span = axis_span(cs);
    const double mid = axis_mid(cs);
    double acc = 0;
    for (std::size_t i = 0; i < cs.x.size(); ++i) {
        double theta = (phi0 + phi1 * (cs.x[i] - mid) / span) * kDegToRad;
        acc += std::abs(cs.v[i].imag() * std::cos(theta) - cs.v[i].real() * std::sin(theta));
    }
    return acc;
}

double real_sum(const ComplexSpectrum& cs, double phi0, double phi1) {
    const double span = axis_span(cs);
    const double mid = axis_mid(cs);
    double acc = 0;
    for (std::size_t i = 0; i < cs.x.size(); ++i) {
        double theta = (phi0 + phi1 * (cs.x[i] - mid) / span) * kDegToRad;
        acc += cs.v[i].real() * std::cos(theta) + cs.v[i].imag() * std::sin(theta);
    }
    return acc;
}

double wrap_deg(double a) {
    while (a >= 180.0) a -= 360.0;
    while (a < -180.0) a += 360.0;
    return a;
}

}  // namespace

ComplexSpectrum nmr_phase(const ComplexSpectrum& cs, double phi0_deg, double phi1_deg,
                          double pivot_ppm) {
    require_complex(cs);
    if (pivot_ppm < cs.x.front() || pivot_ppm > cs.x.back())
        throw Error("InvalidArgument", "pivot must lie within the ppm axis");

    const double span = axis_span(cs);
    ComplexSpectrum out = cs;
    for (std::size_t i = 0; i < cs.x.size(); ++i) {
        double theta = (phi0_deg + phi1_deg * (cs.x[i] - pivot_ppm) / span) * kDegToRad;
        out.v[i] = cs.v[i] * std::complex<double>(std::cos(theta), -std::sin(theta));
    }
    return out;
}

std::pair<double, double> nmr_autophase(const ComplexSpectrum& cs) {
    require_complex(cs);
    const std::size_t n = cs.x.size();
    const double span = axis_span(cs);
    const double mid = axis_mid(cs);

    // coarse grid: phi0 in 1-degree steps over [-180, 180), phi1 in 2-degree
    // steps over [-90, 90]. For each phi1 the phi1 twist is applied once and
    // phi0 reduces to a single rotation of the pre-twisted points.
    double best = std::numeric_limits<double>::infinity();
    double best0 = 0, best1 = 0;
    std::vector<double> wre(n), wim(n);
    for (int i1 = -45; i1 <= 45; ++i1) {
        double phi1 = 2.0 * i1;
        for (std::size_t i = 0; i < n; ++i) {
            double theta = phi1 * (cs.x[i] - mid) / span * kDegToRad;
            double c = std::cos(theta), s = std::sin(theta);
            wre[i] = cs.v[i].real() * c + cs.v[i].imag() * s;
            wim[i] = cs.v[i].imag() * c - cs.v[i].real() * s;
        }
        for (int i0 = -180; i0 < 180; ++i0) {
            double c = std::cos(i0 * kDegToRad), s = std::sin(i0 * kDegToRad);
            double acc = 0;
            for (std::size_t i = 0; i < n; ++i) acc += std::abs(wim[i] * c - wre[i] * s);
            if (acc < best) {
                best = acc;
                best0 = i0;
                best1 = phi1;
            }
        }
    }

    // coordinate descent, halving steps down to 0.01-degree resolution
    double p0 = best0, p1 = best1;
    double cur = best;
    for (double step = 0.5; step >= 0.005; step *= 0.5) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int coord = 0; coord < 2; ++coord) {
                for (double dir : {+1.0, -1.0}) {
                    double t0 = p0 + (coord == 0 ? dir * step : 0.0);
                    double t1 = p1 + (coord == 1 ? dir * step : 0.0);
                    double v = imag_l1(cs, t0, t1);
                    if (v < cur) {
                        cur = v;
                        p0 = t0;
                        p1 = t1;
                        moved = true;
                    }
                }
            }
        }
    }

    // |Im| is invariant under a 180-degree flip; prefer positive total signal
    if (real_sum(cs, p0, p1) < 0) p0 = wrap_deg(p0 + 180.0);
    return {wrap_deg(p0), p1};
}

std::vector<double> nmr_integrate(const Spectrum& real_spectrum,
                                  const std::vector<std::pair<double, double>>& ranges,
                                  int reference, double reference_value) {
    if (real_spectrum.x.size() != real_spectrum.y.size() || real_spectrum.x.size() < 2)
        throw Error("InvalidSpectrum", "spectrum needs |x| == |y| >= 2");
    if (ranges.empty()) throw Error("InvalidArgument", "ranges must be non-empty");
    if (reference < 0 || reference >= int(ranges.size()))
        throw Error("InvalidArgument", "reference index out of bounds");

    std::vector<double> raw;
    raw.reserve(ranges.size());
    for (const auto& r : ranges) {
        double lo = std::min(r.first, r.second), hi = std::max(r.first, r.second);
        std::size_t a = 0;
        while (a < real_spectrum.x.size() && real_spectrum.x[a] < lo) ++a;
        std::size_t b = a;
        while (b < real_spectrum.x.size() && real_spectrum.x[b] <= hi) ++b;
        if (a >= b) throw Error("EmptyRange", "no samples inside integration range");
        double acc = 0;
        for (std::size_t i = a; i + 1 < b; ++i)
            acc += 0.5 * (real_spectrum.y[i] + real_spectrum.y[i + 1]) *
                   (real_spectrum.x[i + 1] - real_spectrum.x[i]);
        raw.push_back(acc);
    }
    double ref = raw[std::size_t(reference)];
    if (ref == 0) throw Error("ZeroReference", "reference range integrates to zero");
    std::vector<double> out;
    out.reserve(raw.size());
    for (double v : raw) out.push_back(v / ref * reference_value);
    return out;
}

}  // namespace aurakit::analysis

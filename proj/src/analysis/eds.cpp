#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

Composition eds_convert(const Composition& c, CompositionBasis to) {
    if (c.entries.empty()) throw Error("InvalidComposition", "composition has no entries");
    std::set<std::string> seen;
    double total = 0;
    for (const auto& e : c.entries) {
        if (!(e.atomic_mass > 0)) throw Error("ZeroMass", "atomic mass must be > 0: " + e.element);
        if (e.fraction < 0) throw Error("InvalidComposition", "negative fraction: " + e.element);
        if (!seen.insert(e.element).second)
            throw Error("InvalidComposition", "duplicate element: " + e.element);
        total += e.fraction;
    }
    if (std::abs(total - 100.0) > 1e-6)
        throw Error("InvalidComposition", "fractions must sum to 100");

    Composition out = c;
    if (to == c.basis) return out;
    out.basis = to;

    double denom = 0;
    for (const auto& e : c.entries)
        denom += (to == CompositionBasis::atomic) ? e.fraction / e.atomic_mass
                                                  : e.fraction * e.atomic_mass;
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        const auto& e = c.entries[i];
        double v = (to == CompositionBasis::atomic) ? e.fraction / e.atomic_mass
                                                    : e.fraction * e.atomic_mass;
        out.entries[i].fraction = v / denom * 100.0;
    }
    // pin the sum to exactly 100 against accumulated roundoff
    double s = 0;
    for (const auto& e : out.entries) s += e.fraction;
    for (auto& e : out.entries) e.fraction *= 100.0 / s;
    return out;
}

double eds_snr(const Spectrum& s, std::pair<double, double> peak_window,
               std::pair<double, double> bg_window) {
    if (s.x.size() != s.y.size() || s.x.size() < 2)
        throw Error("InvalidSpectrum", "spectrum needs |x| == |y| >= 2");

    auto collect = [&](std::pair<double, double> w, std::vector<double>& out) {
        double lo = std::min(w.first, w.second), hi = std::max(w.first, w.second);
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (s.x[i] >= lo && s.x[i] <= hi) out.push_back(s.y[i]);
        if (out.empty()) throw Error("EmptyWindow", "window contains no samples");
    };
    std::vector<double> peak, bg;
    collect(peak_window, peak);
    collect(bg_window, bg);

    double peak_max = *std::max_element(peak.begin(), peak.end());
    double mean = 0;
    for (double v : bg) mean += v;
    mean /= double(bg.size());
    double var = 0;
    for (double v : bg) var += (v - mean) * (v - mean);
    double sd = std::sqrt(var / double(bg.size()));

    double num = peak_max - mean;
    if (sd == 0) return num == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::max(0.0, num / sd);
}

}  // namespace aurakit::analysis

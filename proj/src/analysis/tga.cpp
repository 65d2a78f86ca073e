#include <algorithm>
#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

namespace {

std::vector<double> moving_average(const std::vector<double>& y, int window) {
    const int n = int(y.size());
    const int half = window / 2;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - half), hi = std::min(n - 1, i + half);
        double acc = 0;
        for (int j = lo; j <= hi; ++j) acc += y[j];
        out[i] = acc / (hi - lo + 1);
    }
    return out;
}

}  // namespace

std::vector<TgaStep> tga_steps(const Spectrum& curve,
                               const std::optional<Spectrum>& heat_flow,
                               int smooth_window, double min_loss_pct) {
    const std::size_t n = curve.x.size();
    if (n != curve.y.size() || n < 5)
        throw Error("InvalidSpectrum", "TGA curve needs |T| == |mass| >= 5");
    for (std::size_t i = 1; i < n; ++i)
        if (!(curve.x[i] > curve.x[i - 1]))
            throw Error("NonMonotonicTemperature", "temperature axis must be increasing");
    if (smooth_window < 1 || smooth_window % 2 == 0)
        throw Error("InvalidArgument", "smooth_window must be odd and >= 1");
    if (!(min_loss_pct > 0)) throw Error("InvalidArgument", "min_loss_pct must be > 0");

    const auto& t = curve.x;
    std::vector<double> mass = moving_average(curve.y, smooth_window);

    // DTG = -d(mass)/dT, central differences
    std::vector<double> dtg(n);
    for (std::size_t i = 1; i + 1 < n; ++i)
        dtg[i] = -(mass[i + 1] - mass[i - 1]) / (t[i + 1] - t[i - 1]);
    dtg[0] = dtg[1];
    dtg[n - 1] = dtg[n - 2];

    // Detection threshold heuristic: a step losing min_loss_pct spread over
    // at most half the temperature axis peaks at >= 2*min_loss_pct/span, so
    // require that much DTG prominence.
    const double span = t.back() - t.front();
    const double threshold = 2.0 * min_loss_pct / span;

    Spectrum dtg_spec{t, dtg, curve.x_unit, "%/K"};
    auto peaks = detect_peaks(dtg_spec, threshold, 1);

    std::vector<TgaStep> out;
    for (const auto& pk : peaks) {
        const int p = pk.index;
        const double cut = 0.01 * dtg[p];
        int left = p;
        while (left > 0 && dtg[left] >= cut) --left;
        int right = p;
        while (right + 1 < int(n) && dtg[right] >= cut) ++right;

        double before = mass[left];
        double after = mass[right];
        double loss = before - after;
        if (loss < min_loss_pct) continue;

        // extrapolated onset: horizontal plateau tangent meets the tangent at
        // the inflection point (the DTG peak)
        double slope = -dtg[p];
        if (slope >= 0) continue;  // not a mass-loss step
        double onset = t[p] + (before - mass[p]) / slope;

        TgaStep step;
        step.onset_temperature = onset;
        step.mass_loss_pct = loss;
        step.dtg_peak_temperature = t[p];

        if (heat_flow.has_value()) {
            const auto& hf = *heat_flow;
            if (hf.x.size() != hf.y.size() || hf.x.size() < 2)
                throw Error("InvalidSpectrum", "heat-flow channel needs |x| == |y| >= 2");
            double lo = t[left], hi = t[right];
            double acc = 0;
            bool any = false;
            for (std::size_t i = 0; i + 1 < hf.x.size(); ++i) {
                if (hf.x[i] >= lo && hf.x[i + 1] <= hi) {
                    acc += 0.5 * (hf.y[i] + hf.y[i + 1]) * (hf.x[i + 1] - hf.x[i]);
                    any = true;
                }
            }
            if (any) step.enthalpy = acc / (curve.y.front() / 100.0);
        }
        out.push_back(step);
    }
    return out;
}

}  // namespace aurakit::analysis

#include <algorithm>
#include <cmath>

#include "models.hpp"

namespace aurakit::sim {

namespace {

constexpr std::int64_t kScanDurationMs = 10000;
constexpr double kNoiseScale = 0.05;  // std = kNoiseScale / sqrt(integration_ms)

// UV-vis / PL spectrometer. Two screens: acquisition parameters and the scan
// panel. The sample's absorbance model is a per-seed sum of Gaussian bands
// on a linear offset; emission mode draws a separate band set. A scan takes
// a fixed simulated 10 s; noise shrinks with integration time.
class UvVis final : public Simulator {
public:
    explicit UvVis(std::uint64_t seed) : Simulator(uvvis_descriptor(), seed) {
        set_enabled("abort_scan", false);
        set_enabled("export_spectrum", false);
    }

private:
    void on_click(const std::string& id) override {
        if (id == "goto_acquire") {
            set_screen("acquire");
        } else if (id == "back_to_settings") {
            set_screen("settings");
        } else if (id == "start_scan") {
            if (number_of("wavelength_end") <= number_of("wavelength_start")) {
                set_value("status", model::Value("config_error"));
                return;
            }
            scan_start_ = clock() + descriptor().action_cost_ms;
            scan_running_ = true;
            data_ready_ = false;
            ++acq_index_;
            captured_start_ = number_of("wavelength_start");
            captured_end_ = number_of("wavelength_end");
            captured_integration_ = std::int64_t(number_of("integration_ms"));
            captured_mode_ = text_of("mode");
            set_value("status", model::Value("running"));
            set_value("progress", model::Value(0.0));
            set_value("spectrum_preview", model::Value(std::string("")));
            set_enabled("start_scan", false);
            set_enabled("abort_scan", true);
            set_enabled("export_spectrum", false);
        } else if (id == "abort_scan") {
            scan_running_ = false;
            set_value("status", model::Value("idle"));
            set_value("progress", model::Value(0.0));
            set_enabled("start_scan", true);
            set_enabled("abort_scan", false);
        }
    }

    std::optional<std::int64_t> next_deadline() const override {
        if (scan_running_) return scan_start_ + kScanDurationMs;
        return std::nullopt;
    }

    void on_deadline(std::int64_t) override {
        scan_running_ = false;
        data_ready_ = true;
        set_value("status", model::Value("complete"));
        set_value("progress", model::Value(1.0));
        set_value("spectrum_preview",
                  model::Value("spectrum@" + std::to_string(acq_index_)));
        set_enabled("start_scan", true);
        set_enabled("abort_scan", false);
        set_enabled("export_spectrum", true);
    }

    void refresh() override {
        if (scan_running_) {
            double p = std::clamp(double(clock() - scan_start_) / kScanDurationMs, 0.0, 1.0);
            set_value("progress", model::Value(p));
        }
    }

    Dataset do_export(const std::string&) override {
        if (!data_ready_) throw Error("NotReady", "no completed scan to export");

        analysis::Spectrum s;
        s.x_unit = "nm";
        s.y_unit = captured_mode_ == "emission" ? "counts" : "absorbance";

        // sample bands fixed per (seed, mode)
        auto bands_rng = rng("uvvis.components." + captured_mode_);
        int k = 2 + (bands_rng.uniform() < 0.4 ? 1 : 0);
        std::vector<std::array<double, 3>> bands;  // A, mu, sigma
        for (int i = 0; i < k; ++i)
            bands.push_back({bands_rng.uniform(0.2, 1.2), bands_rng.uniform(260, 900),
                             bands_rng.uniform(8, 40)});
        double b0 = bands_rng.uniform(0.01, 0.1);
        double b1 = bands_rng.uniform(1e-5, 2e-4);

        double noise_std = kNoiseScale / std::sqrt(double(captured_integration_));
        auto noise_rng = rng("uvvis.noise", acq_index_);
        for (double x = captured_start_; x <= captured_end_ + 1e-9; x += 1.0) {
            double y = b0 + b1 * x;
            for (const auto& b : bands) {
                double t = (x - b[1]) / b[2];
                y += b[0] * std::exp(-0.5 * t * t);
            }
            s.x.push_back(x);
            s.y.push_back(y + noise_std * noise_rng.normal());
        }

        Dataset d;
        d.kind = model::PayloadKind::spectrum;
        d.payload = std::move(s);
        nlohmann::json truth;
        for (const auto& b : bands) truth.push_back({{"a", b[0]}, {"mu", b[1]}, {"sigma", b[2]}});
        d.provenance = provenance({{"wavelength_start", captured_start_},
                                   {"wavelength_end", captured_end_},
                                   {"integration_ms", captured_integration_},
                                   {"mode", captured_mode_},
                                   {"acquisition", acq_index_},
                                   {"bands", truth},
                                   {"baseline", {b0, b1}},
                                   {"noise_std", noise_std}});
        return d;
    }

    bool scan_running_ = false;
    bool data_ready_ = false;
    std::int64_t scan_start_ = 0;
    std::int64_t acq_index_ = 0;
    double captured_start_ = 0, captured_end_ = 0;
    std::int64_t captured_integration_ = 0;
    std::string captured_mode_;
};

}  // namespace

InstrumentDescriptor uvvis_descriptor() {
    InstrumentDescriptor d;
    d.model_id = "uvvis";
    d.version = "1.0.0";
    d.screens = {"settings", "acquire"};
    d.initial_screen = "settings";
    d.widgets = {
        numeric("wavelength_start", "settings", 200, 800, 300, "nm"),
        numeric("wavelength_end", "settings", 300, 1100, 800, "nm"),
        numeric("integration_ms", "settings", 1, 10000, 100, "ms", /*integral=*/true),
        dropdown("mode", "settings", {"absorbance", "emission"}, "absorbance"),
        button("goto_acquire", "settings"),
        button("back_to_settings", "acquire"),
        button("start_scan", "acquire"),
        button("abort_scan", "acquire"),
        readout_text("status", "acquire", "idle"),
        progress_bar("progress", "acquire"),
        preview("spectrum_preview", "acquire"),
        button("export_spectrum", "acquire"),
    };
    d.exports = {{"spectrum", model::PayloadKind::spectrum}};
    return d;
}

std::unique_ptr<Simulator> make_uvvis(std::uint64_t seed) {
    return std::make_unique<UvVis>(seed);
}

}  // namespace aurakit::sim

#include <algorithm>
#include <cmath>

#include "aurakit/sim/radon.hpp"
#include "models.hpp"

namespace aurakit::sim {

namespace {

// Micro-CT scanner: resolution and per-projection exposure set on the setup
// screen; a scan acquires n_angles projections of the seeded internal
// phantom and exports the sinogram (and the phantom itself as the ground
// truth image).
class MicroCt final : public Simulator {
public:
    explicit MicroCt(std::uint64_t seed) : Simulator(microct_descriptor(), seed) {
        set_enabled("export_sinogram", false);
        set_enabled("export_phantom", false);
    }

private:
    void on_click(const std::string& id) override {
        if (id == "goto_scan") {
            set_screen("scan");
        } else if (id == "back_to_setup") {
            set_screen("setup");
        } else if (id == "start_scan") {
            scan_running_ = true;
            data_ready_ = false;
            scan_start_ = clock() + descriptor().action_cost_ms;
            captured_resolution_ = int(number_of("resolution"));
            captured_angles_ = int(number_of("n_angles"));
            captured_exposure_ = std::int64_t(number_of("exposure_ms"));
            duration_ = captured_angles_ * captured_exposure_;
            set_value("scan_status", model::Value("running"));
            set_value("scan_progress", model::Value(0.0));
            set_enabled("start_scan", false);
            set_enabled("export_sinogram", false);
            set_enabled("export_phantom", false);
        }
    }

    std::optional<std::int64_t> next_deadline() const override {
        if (scan_running_) return scan_start_ + duration_;
        return std::nullopt;
    }

    void on_deadline(std::int64_t) override {
        scan_running_ = false;
        data_ready_ = true;
        set_value("scan_status", model::Value("complete"));
        set_value("scan_progress", model::Value(1.0));
        set_enabled("start_scan", true);
        set_enabled("export_sinogram", true);
        set_enabled("export_phantom", true);
    }

    void refresh() override {
        if (scan_running_) {
            double p = std::clamp(double(clock() - scan_start_) / double(duration_), 0.0, 1.0);
            set_value("scan_progress", model::Value(p));
        }
    }

    Dataset do_export(const std::string& id) override {
        if (!data_ready_) throw Error("NotReady", "no completed scan to export");
        auto phantom = make_ct_phantom(seed(), captured_resolution_);
        nlohmann::json params = {{"resolution", captured_resolution_},
                                 {"n_angles", captured_angles_},
                                 {"exposure_ms", captured_exposure_}};
        Dataset d;
        if (id == "sinogram") {
            d.kind = model::PayloadKind::sinogram;
            d.payload = simulate_sinogram(phantom, captured_angles_, captured_resolution_);
        } else {
            d.kind = model::PayloadKind::image;
            d.payload = std::move(phantom);
        }
        d.provenance = provenance(std::move(params));
        return d;
    }

    bool scan_running_ = false;
    bool data_ready_ = false;
    std::int64_t scan_start_ = 0;
    std::int64_t duration_ = 0;
    int captured_resolution_ = 64;
    int captured_angles_ = 180;
    std::int64_t captured_exposure_ = 50;
};

}  // namespace

InstrumentDescriptor microct_descriptor() {
    InstrumentDescriptor d;
    d.model_id = "microct";
    d.version = "1.0.0";
    d.screens = {"setup", "scan"};
    d.initial_screen = "setup";
    d.widgets = {
        numeric("resolution", "setup", 32, 256, 64, "px", /*integral=*/true),
        numeric("n_angles", "setup", 16, 720, 180, nullptr, /*integral=*/true),
        numeric("exposure_ms", "setup", 10, 1000, 50, "ms", /*integral=*/true),
        button("goto_scan", "setup"),

        button("back_to_setup", "scan"),
        button("start_scan", "scan"),
        readout_text("scan_status", "scan", "idle"),
        progress_bar("scan_progress", "scan"),
        button("export_sinogram", "scan"),
        button("export_phantom", "scan"),
    };
    d.exports = {{"sinogram", model::PayloadKind::sinogram},
                 {"phantom", model::PayloadKind::image}};
    return d;
}

std::unique_ptr<Simulator> make_microct(std::uint64_t seed) {
    return std::make_unique<MicroCt>(seed);
}

}  // namespace aurakit::sim

#include <algorithm>
#include <cmath>

#include "models.hpp"

namespace aurakit::sim {

namespace {

constexpr std::int64_t kPumpDurationMs = 5000;
constexpr std::int64_t kImageDurationMs = 2000;
constexpr int kImageSize = 64;
constexpr int kEdsBins = 1000;
constexpr double kEdsBinWidth = 0.02;  // keV
constexpr double kEdsLineSigma = 0.06;
constexpr double kEdsBgRate = 0.2;    // counts per ms per bin, before the seed scale
constexpr double kEdsLineRate = 0.3;  // peak line rate at wt fraction 1

struct ElementLine {
    const char* symbol;
    double atomic_mass;
    double energy_kev;
};

// K-alpha lines of the elements the sample generator draws from
constexpr ElementLine kElements[] = {
    {"Al", 26.982, 1.487}, {"Si", 28.085, 1.740}, {"Ti", 47.867, 4.511},
    {"Fe", 55.845, 6.404}, {"Ni", 58.693, 7.478}, {"Cu", 63.546, 8.046},
};

// SEM with an EDS attachment. Chamber screen runs the vacuum chain, the
// imaging screen captures micrographs whose field of view scales inversely
// with magnification, and the EDS screen accumulates X-ray counts over
// dwell time (counts keep accumulating across acquisitions, so extending the
// dwell improves the spectrum rather than replacing it).
class SemEds final : public Simulator {
public:
    explicit SemEds(std::uint64_t seed) : Simulator(semeds_descriptor(), seed) {
        auto r = rng("sem.focus");
        focus_optimum_ = r.uniform(30, 70);
        auto comp = rng("eds.composition");
        int n_elem = 2 + (comp.uniform() < 0.5 ? 1 : 0);
        std::vector<int> pool = {0, 1, 2, 3, 4, 5};
        double total = 0;
        for (int i = 0; i < n_elem; ++i) {
            int pick = int(comp.next_u64() % pool.size());
            int el = pool[pick];
            pool.erase(pool.begin() + pick);
            double w = comp.uniform(0.2, 1.0);
            composition_.emplace_back(el, w);
            total += w;
        }
        for (auto& [el, w] : composition_) w /= total;
        intensity_scale_ = std::exp(comp.uniform(std::log(0.05), std::log(2.0)));
        counts_.assign(kEdsBins, 0.0);

        set_enabled("goto_imaging", false);
        set_enabled("vent", false);
        set_enabled("export_image", false);
        set_enabled("export_eds", false);
        update_sharpness();
    }

private:
    void on_click(const std::string& id) override {
        if (id == "pump") {
            if (vacuum_ == Vacuum::vented) {
                vacuum_ = Vacuum::pumping;
                pump_start_ = clock() + descriptor().action_cost_ms;
                set_value("vacuum_state", model::Value("pumping"));
                set_enabled("pump", false);
                set_enabled("vent", true);
            }
        } else if (id == "vent") {
            vacuum_ = Vacuum::vented;
            set_value("vacuum_state", model::Value("vented"));
            set_enabled("pump", true);
            set_enabled("vent", false);
            set_enabled("goto_imaging", false);
        } else if (id == "goto_imaging") {
            set_screen("imaging");
        } else if (id == "back_to_chamber") {
            set_screen("chamber");
        } else if (id == "goto_eds") {
            set_screen("eds");
        } else if (id == "back_to_imaging") {
            set_screen("imaging");
        } else if (id == "capture") {
            img_running_ = true;
            img_start_ = clock() + descriptor().action_cost_ms;
            img_ready_ = false;
            ++img_index_;
            captured_kv_ = number_of("accel_voltage");
            captured_mag_ = number_of("magnification");
            captured_focus_ = number_of("focus");
            set_value("img_status", model::Value("running"));
            set_value("img_progress", model::Value(0.0));
            set_enabled("capture", false);
            set_enabled("export_image", false);
        } else if (id == "start_eds") {
            eds_running_ = true;
            eds_start_ = clock() + descriptor().action_cost_ms;
            ++eds_index_;
            captured_dwell_ = std::int64_t(number_of("dwell_ms"));
            set_value("eds_status", model::Value("running"));
            set_value("eds_progress", model::Value(0.0));
            set_enabled("start_eds", false);
        }
    }

    std::optional<std::int64_t> next_deadline() const override {
        std::optional<std::int64_t> next;
        auto consider = [&](std::int64_t t) {
            if (!next || t < *next) next = t;
        };
        if (vacuum_ == Vacuum::pumping) consider(pump_start_ + kPumpDurationMs);
        if (img_running_) consider(img_start_ + kImageDurationMs);
        if (eds_running_) consider(eds_start_ + captured_dwell_);
        return next;
    }

    void on_deadline(std::int64_t at) override {
        if (vacuum_ == Vacuum::pumping && at >= pump_start_ + kPumpDurationMs) {
            vacuum_ = Vacuum::ready;
            set_value("vacuum_state", model::Value("ready"));
            set_enabled("goto_imaging", true);
        }
        if (img_running_ && at >= img_start_ + kImageDurationMs) {
            img_running_ = false;
            img_ready_ = true;
            set_value("img_status", model::Value("complete"));
            set_value("img_progress", model::Value(1.0));
            set_enabled("capture", true);
            set_enabled("export_image", true);
        }
        if (eds_running_ && at >= eds_start_ + captured_dwell_) {
            eds_running_ = false;
            eds_ready_ = true;
            accumulate_counts(captured_dwell_);
            set_value("eds_status", model::Value("complete"));
            set_value("eds_progress", model::Value(1.0));
            set_value("snr", model::Value(current_snr()));
            set_enabled("start_eds", true);
            set_enabled("export_eds", true);
        }
    }

    void refresh() override {
        if (img_running_) {
            double p = std::clamp(double(clock() - img_start_) / kImageDurationMs, 0.0, 1.0);
            set_value("img_progress", model::Value(p));
        }
        if (eds_running_) {
            double p = std::clamp(double(clock() - eds_start_) / double(captured_dwell_), 0.0, 1.0);
            set_value("eds_progress", model::Value(p));
        }
    }

    void on_value_set(const std::string& id) override {
        if (id == "focus") update_sharpness();
    }

    void update_sharpness() {
        double off = (number_of("focus") - focus_optimum_) / 5.0;
        double s = 1.0 / (1.0 + off * off);
        set_value("sharpness", model::Value(std::round(s * 1e4) / 1e4));
    }

    // --- EDS model -------------------------------------------------------

    double bin_energy(int i) const { return 0.01 + kEdsBinWidth * i; }

    double rate_at(int i) const {
        double e = bin_energy(i);
        double r = kEdsBgRate;
        for (const auto& [el, w] : composition_) {
            double d = (e - kElements[el].energy_kev) / kEdsLineSigma;
            r += kEdsLineRate * w * std::exp(-0.5 * d * d);
        }
        return r * intensity_scale_;
    }

    void accumulate_counts(std::int64_t dwell_ms) {
        auto r = rng("eds.counts", eds_index_);
        for (int i = 0; i < kEdsBins; ++i)
            counts_[i] += double(r.poisson(rate_at(i) * double(dwell_ms)));
        total_dwell_ += dwell_ms;
    }

    double current_snr() const {
        // strongest line of the ground-truth composition; background window
        // in the line-free high-energy region
        double best_e = kElements[composition_[0].first].energy_kev, best_w = -1;
        for (const auto& [el, w] : composition_)
            if (w > best_w) {
                best_w = w;
                best_e = kElements[el].energy_kev;
            }
        double peak = 0;
        double bg_sum = 0, bg_sq = 0;
        int bg_n = 0;
        for (int i = 0; i < kEdsBins; ++i) {
            double e = bin_energy(i);
            if (std::abs(e - best_e) <= 0.2) peak = std::max(peak, counts_[i]);
            if (e >= 12.0 && e <= 18.0) {
                bg_sum += counts_[i];
                bg_sq += counts_[i] * counts_[i];
                ++bg_n;
            }
        }
        double mean = bg_sum / bg_n;
        double var = bg_sq / bg_n - mean * mean;
        double sd = std::sqrt(std::max(0.0, var));
        if (sd == 0) return 0.0;
        return std::round((peak - mean) / sd * 1e3) / 1e3;
    }

    // --- imaging model ---------------------------------------------------

    // smooth world texture: dark pores on a bright matrix, coordinates in um
    double world_at(double x_um, double y_um) const {
        double v = 0.85 + 0.004 * captured_kv_;
        for (const auto& b : world_blobs_) {
            double dx = (x_um - b[0]) / b[2], dy = (y_um - b[1]) / b[2];
            v -= b[3] * std::exp(-0.5 * (dx * dx + dy * dy));
        }
        return std::clamp(v, 0.0, 1.0);
    }

    void ensure_world() {
        if (!world_blobs_.empty()) return;
        auto r = rng("sem.world");
        for (int i = 0; i < 40; ++i)
            world_blobs_.push_back(
                {r.uniform(-60, 60), r.uniform(-60, 60), r.uniform(2, 10), r.uniform(0.3, 1.0)});
    }

    Dataset export_image() {
        if (!img_ready_) throw Error("NotReady", "no completed capture to export");
        ensure_world();
        const int n = kImageSize;
        double fov_um = 115000.0 / captured_mag_;
        double px_um = fov_um / n;

        std::vector<double> raw(std::size_t(n) * n);
        for (int rI = 0; rI < n; ++rI)
            for (int c = 0; c < n; ++c)
                raw[std::size_t(rI) * n + c] =
                    world_at((c - n / 2) * px_um, (rI - n / 2) * px_um);

        // defocus blur in pixel space
        double sigma = std::abs(captured_focus_ - focus_optimum_) / 8.0;
        if (sigma > 0.05) raw = gaussian_blur(raw, n, sigma);

        analysis::GrayImage img;
        img.rows = n;
        img.cols = n;
        img.px.resize(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i)
            img.px[i] = std::uint8_t(std::lround(std::clamp(raw[i], 0.0, 1.0) * 255.0));

        Dataset d;
        d.kind = model::PayloadKind::image;
        d.payload = std::move(img);
        d.provenance = provenance({{"accel_voltage_kv", captured_kv_},
                                   {"magnification", captured_mag_},
                                   {"focus", captured_focus_},
                                   {"focus_optimum", focus_optimum_},
                                   {"fov_um", fov_um},
                                   {"pixel_um", px_um},
                                   {"acquisition", img_index_}});
        return d;
    }

    static std::vector<double> gaussian_blur(const std::vector<double>& src, int n,
                                             double sigma) {
        int radius = std::max(1, int(std::ceil(3 * sigma)));
        std::vector<double> kernel(2 * radius + 1);
        double sum = 0;
        for (int i = -radius; i <= radius; ++i) {
            kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
            sum += kernel[i + radius];
        }
        for (auto& k : kernel) k /= sum;
        std::vector<double> tmp(src.size()), out(src.size());
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                double acc = 0;
                for (int i = -radius; i <= radius; ++i) {
                    int cc = std::clamp(c + i, 0, n - 1);
                    acc += kernel[i + radius] * src[std::size_t(r) * n + cc];
                }
                tmp[std::size_t(r) * n + c] = acc;
            }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                double acc = 0;
                for (int i = -radius; i <= radius; ++i) {
                    int rr = std::clamp(r + i, 0, n - 1);
                    acc += kernel[i + radius] * tmp[std::size_t(rr) * n + c];
                }
                out[std::size_t(r) * n + c] = acc;
            }
        return out;
    }

    Dataset export_eds() {
        if (!eds_ready_) throw Error("NotReady", "no completed EDS acquisition to export");
        analysis::Spectrum s;
        s.x_unit = "keV";
        s.y_unit = "counts";
        for (int i = 0; i < kEdsBins; ++i) {
            s.x.push_back(bin_energy(i));
            s.y.push_back(counts_[i]);
        }
        nlohmann::json comp = nlohmann::json::array();
        for (const auto& [el, w] : composition_)
            comp.push_back({{"element", kElements[el].symbol},
                            {"atomic_mass", kElements[el].atomic_mass},
                            {"weight_fraction_pct", w * 100.0},
                            {"line_kev", kElements[el].energy_kev}});
        Dataset d;
        d.kind = model::PayloadKind::spectrum;
        d.payload = std::move(s);
        d.provenance = provenance({{"total_dwell_ms", total_dwell_},
                                   {"acquisitions", eds_index_},
                                   {"intensity_scale", intensity_scale_},
                                   {"composition", comp}});
        return d;
    }

    Dataset do_export(const std::string& id) override {
        if (id == "sem_image") return export_image();
        return export_eds();
    }

    enum class Vacuum { vented, pumping, ready };

    Vacuum vacuum_ = Vacuum::vented;
    std::int64_t pump_start_ = 0;

    double focus_optimum_ = 50;
    bool img_running_ = false, img_ready_ = false;
    std::int64_t img_start_ = 0, img_index_ = 0;
    double captured_kv_ = 15, captured_mag_ = 1000, captured_focus_ = 50;
    std::vector<std::array<double, 4>> world_blobs_;  // x, y, radius, depth

    std::vector<std::pair<int, double>> composition_;  // element index, weight fraction
    double intensity_scale_ = 1.0;
    bool eds_running_ = false, eds_ready_ = false;
    std::int64_t eds_start_ = 0, eds_index_ = 0;
    std::int64_t captured_dwell_ = 1000, total_dwell_ = 0;
    std::vector<double> counts_;
};

}  // namespace

InstrumentDescriptor semeds_descriptor() {
    InstrumentDescriptor d;
    d.model_id = "sem-eds";
    d.version = "1.0.0";
    d.screens = {"chamber", "imaging", "eds"};
    d.initial_screen = "chamber";
    d.widgets = {
        readout_text("vacuum_state", "chamber", "vented"),
        button("pump", "chamber"),
        button("vent", "chamber"),
        button("goto_imaging", "chamber"),

        button("back_to_chamber", "imaging"),
        numeric("accel_voltage", "imaging", 1, 30, 15, "kV"),
        numeric("magnification", "imaging", 100, 100000, 1000, "x"),
        numeric("focus", "imaging", 0, 100, 50),
        readout_real("sharpness", "imaging", 0),
        button("capture", "imaging"),
        readout_text("img_status", "imaging", "idle"),
        progress_bar("img_progress", "imaging"),
        button("export_image", "imaging"),
        button("goto_eds", "imaging"),

        button("back_to_imaging", "eds"),
        numeric("dwell_ms", "eds", 100, 600000, 1000, "ms", /*integral=*/true),
        button("start_eds", "eds"),
        readout_text("eds_status", "eds", "idle"),
        progress_bar("eds_progress", "eds"),
        readout_real("snr", "eds", 0),
        button("export_eds", "eds"),
    };
    d.exports = {{"sem_image", model::PayloadKind::image},
                 {"eds_spectrum", model::PayloadKind::spectrum}};
    return d;
}

std::unique_ptr<Simulator> make_semeds(std::uint64_t seed) {
    return std::make_unique<SemEds>(seed);
}

}  // namespace aurakit::sim

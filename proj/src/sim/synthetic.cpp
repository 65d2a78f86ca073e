#include "aurakit/sim/synthetic.hpp"

#include <cmath>
#include <set>

#include "aurakit/core/error.hpp"
#include "aurakit/core/rng.hpp"

namespace aurakit::sim {

using analysis::ComplexSpectrum;
using analysis::HeightMap;
using analysis::OrientationMap;
using analysis::Spectrum;
using nlohmann::json;

namespace {

[[noreturn]] void bad_spec(const std::string& msg) { throw Error("InvalidSpec", msg); }

double get_num(const json& spec, const char* key, double fallback) {
    if (!spec.contains(key)) return fallback;
    if (!spec[key].is_number()) bad_spec(std::string(key) + " must be a number");
    return spec[key].get<double>();
}

json base_prov(const std::string& modality, std::uint64_t seed, json params) {
    return json{{"model", "synthetic-" + modality},
                {"seed", seed},
                {"clock_ms", 0},
                {"params", std::move(params)}};
}

Dataset gen_ftir(const json& spec, std::uint64_t seed) {
    double lo = get_num(spec, "lo", 400), hi = get_num(spec, "hi", 4000);
    int n = int(get_num(spec, "n", 1801));
    double noise = get_num(spec, "noise", 0.0);
    if (!(lo < hi) || n < 2) bad_spec("ftir needs lo < hi and n >= 2");

    StreamRng r(seed, "ftir");
    std::vector<std::array<double, 3>> peaks;  // center, height, width
    if (spec.contains("peaks")) {
        for (const auto& p : spec["peaks"]) {
            if (!p.is_array() || p.size() != 3) bad_spec("ftir peaks entries are [center, height, width]");
            peaks.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
            if (peaks.back()[2] <= 0) bad_spec("ftir peak width must be > 0");
        }
    } else {
        int k = 3 + int(r.next_u64() % 3);
        for (int i = 0; i < k; ++i)
            peaks.push_back({r.uniform(600, 3600), r.uniform(0.2, 1.0), r.uniform(8, 30)});
    }

    Spectrum s;
    s.x_unit = "cm-1";
    s.y_unit = "absorbance";
    for (int i = 0; i < n; ++i) {
        double x = lo + (hi - lo) * i / (n - 1);
        double y = 0.02;
        for (const auto& p : peaks) {
            double t = (x - p[0]) / p[2];
            y += p[1] * std::exp(-0.5 * t * t);
        }
        s.x.push_back(x);
        s.y.push_back(y + (noise > 0 ? noise * r.normal() : 0.0));
    }

    json truth = json::array();
    for (const auto& p : peaks)
        truth.push_back({{"center", p[0]}, {"height", p[1]}, {"width", p[2]}});
    Dataset d;
    d.kind = model::PayloadKind::spectrum;
    d.payload = std::move(s);
    d.provenance = base_prov("ftir", seed, {{"peaks", truth}, {"noise", noise}});
    return d;
}

Dataset gen_nmr(const json& spec, std::uint64_t seed) {
    double lo = get_num(spec, "lo", 0), hi = get_num(spec, "hi", 10);
    int n = int(get_num(spec, "n", 2048));
    double phi0 = get_num(spec, "phi0", 0), phi1 = get_num(spec, "phi1", 0);
    double noise = get_num(spec, "noise", 0.0);
    if (!(lo < hi) || n < 2) bad_spec("nmr needs lo < hi and n >= 2");

    StreamRng r(seed, "nmr");
    std::vector<std::array<double, 3>> peaks;  // mu, gamma, area
    if (spec.contains("peaks")) {
        for (const auto& p : spec["peaks"]) {
            if (!p.is_array() || p.size() != 3) bad_spec("nmr peaks entries are [mu, gamma, area]");
            peaks.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
            if (peaks.back()[1] <= 0) bad_spec("nmr linewidth must be > 0");
        }
    } else {
        int k = 2 + int(r.next_u64() % 3);
        for (int i = 0; i < k; ++i)
            peaks.push_back({r.uniform(lo + 1, hi - 1), r.uniform(0.02, 0.1), r.uniform(1, 4)});
    }

    ComplexSpectrum cs;
    cs.x_unit = "ppm";
    const double mid = 0.5 * (lo + hi), span = hi - lo;
    for (int i = 0; i < n; ++i) {
        double x = lo + span * i / (n - 1);
        double re = 0;
        for (const auto& p : peaks)
            re += p[2] * (p[1] / M_PI) / ((x - p[0]) * (x - p[0]) + p[1] * p[1]);
        // phase twist applied with the same operator nmr_phase uses, so the
        // negated angles correct it exactly
        double theta = (phi0 + phi1 * (x - mid) / span) * M_PI / 180.0;
        std::complex<double> v =
            std::complex<double>(re, 0) * std::complex<double>(std::cos(theta), -std::sin(theta));
        if (noise > 0) v += std::complex<double>(noise * r.normal(), noise * r.normal());
        cs.x.push_back(x);
        cs.v.push_back(v);
    }

    json truth = json::array();
    for (const auto& p : peaks)
        truth.push_back({{"mu", p[0]}, {"gamma", p[1]}, {"area", p[2]}});
    Dataset d;
    d.kind = model::PayloadKind::complex_spectrum;
    d.payload = std::move(cs);
    d.provenance = base_prov(
        "nmr", seed, {{"peaks", truth}, {"phi0", phi0}, {"phi1", phi1}, {"noise", noise}});
    return d;
}

Dataset gen_tga(const json& spec, std::uint64_t seed) {
    double t0 = get_num(spec, "t0", 300), t1 = get_num(spec, "t1", 900);
    double dt = get_num(spec, "dt", 0.5);
    double noise = get_num(spec, "noise", 0.0);
    bool with_heat = spec.value("heat_flow", false);
    if (!(t0 < t1) || dt <= 0) bad_spec("tga needs t0 < t1 and dt > 0");

    StreamRng r(seed, "tga");
    std::vector<std::array<double, 4>> steps;  // center, width, loss, enthalpy peak height
    if (spec.contains("steps")) {
        for (const auto& st : spec["steps"]) {
            if (!st.is_array() || st.size() < 3) bad_spec("tga steps entries are [center, width, loss]");
            steps.push_back({st[0].get<double>(), st[1].get<double>(), st[2].get<double>(),
                             st.size() > 3 ? st[3].get<double>() : 5.0});
            if (steps.back()[1] <= 0 || steps.back()[2] <= 0)
                bad_spec("tga step width and loss must be > 0");
        }
    } else {
        int k = 1 + int(r.next_u64() % 2);
        for (int i = 0; i < k; ++i)
            steps.push_back({r.uniform(t0 + 100, t1 - 100), r.uniform(8, 25),
                             r.uniform(10, 30), r.uniform(2, 8)});
    }

    TgaCurve curve;
    curve.mass.x_unit = "K";
    curve.mass.y_unit = "%";
    for (double t = t0; t <= t1 + 1e-9; t += dt) {
        double m = 100.0;
        for (const auto& st : steps) m -= st[2] / (1.0 + std::exp(-(t - st[0]) / st[1]));
        curve.mass.x.push_back(t);
        curve.mass.y.push_back(m + (noise > 0 ? noise * r.normal() : 0.0));
    }
    if (with_heat) {
        Spectrum hf;
        hf.x_unit = "K";
        hf.y_unit = "W/g";
        for (double t : curve.mass.x) {
            double y = 0;
            for (const auto& st : steps) {
                double u = (t - st[0]) / (1.5 * st[1]);
                y += st[3] * std::exp(-0.5 * u * u);
            }
            hf.x.push_back(t);
            hf.y.push_back(y);
        }
        curve.heat_flow = std::move(hf);
    }

    json truth = json::array();
    for (const auto& st : steps) {
        // closed-form onset of the logistic step: Tc - 2w
        json js = {{"center", st[0]},   {"width", st[1]},
                   {"loss_pct", st[2]}, {"onset", st[0] - 2 * st[1]},
                   {"dtg_peak", st[0]}};
        if (with_heat)
            js["enthalpy"] = st[3] * 1.5 * st[1] * std::sqrt(2 * M_PI);  // over m0 = 100%
        truth.push_back(js);
    }
    Dataset d;
    d.kind = model::PayloadKind::tga_curve;
    d.payload = std::move(curve);
    d.provenance = base_prov("tga", seed, {{"steps", truth}, {"noise", noise}});
    return d;
}

Dataset gen_afm(const json& spec, std::uint64_t seed) {
    int rows = int(get_num(spec, "rows", 256)), cols = int(get_num(spec, "cols", 256));
    int bumps = int(get_num(spec, "bumps", 0));
    double noise_std = get_num(spec, "noise_std", 1.0);
    double pa = get_num(spec, "plane_a", 0), pb = get_num(spec, "plane_b", 0),
           pc = get_num(spec, "plane_c", 0);
    if (rows < 2 || cols < 2 || noise_std < 0 || bumps < 0) bad_spec("afm spec out of range");

    StreamRng r(seed, "afm");
    std::vector<std::array<double, 4>> hills;
    for (int i = 0; i < bumps; ++i)
        hills.push_back({r.uniform(0, cols - 1), r.uniform(0, rows - 1),
                         r.uniform(3, std::max(4.0, cols / 8.0)), r.uniform(1, 6)});

    HeightMap h;
    h.rows = rows;
    h.cols = cols;
    h.z.resize(std::size_t(rows) * cols);
    for (int row = 0; row < rows; ++row) {
        for (int col = 0; col < cols; ++col) {
            double z = pa + pb * col + pc * row;
            for (const auto& b : hills) {
                double dx = (col - b[0]) / b[2], dy = (row - b[1]) / b[2];
                z += b[3] * std::exp(-0.5 * (dx * dx + dy * dy));
            }
            h.at(row, col) = z;
        }
    }
    if (noise_std > 0)
        for (auto& z : h.z) z += noise_std * r.normal();

    Dataset d;
    d.kind = model::PayloadKind::height_map;
    d.payload = std::move(h);
    d.provenance = base_prov("afm", seed,
                             {{"plane", {pa, pb, pc}},
                              {"bumps", bumps},
                              {"noise_std", noise_std},
                              {"expected_rq", noise_std},
                              {"expected_ra", noise_std * std::sqrt(2.0 / M_PI)}});
    return d;
}

Dataset gen_ebsd(const json& spec, std::uint64_t seed) {
    int rows = int(get_num(spec, "rows", 64)), cols = int(get_num(spec, "cols", 64));
    if (rows < 2 || cols < 2) bad_spec("ebsd needs rows, cols >= 2");

    StreamRng r(seed, "ebsd");
    std::vector<double> orientations;
    int k;
    if (spec.contains("orientations")) {
        for (const auto& o : spec["orientations"]) {
            double v = o.get<double>();
            if (v < 0 || v >= 180) bad_spec("orientations must lie in [0, 180)");
            orientations.push_back(v);
        }
        k = int(orientations.size());
        if (k < 1) bad_spec("need at least one orientation");
    } else {
        k = int(get_num(spec, "seeds", 5));
        if (k < 1) bad_spec("need seeds >= 1");
        for (int i = 0; i < k; ++i) orientations.push_back(r.uniform(0, 180));
    }

    // Voronoi sites
    std::vector<std::pair<double, double>> sites;
    for (int i = 0; i < k; ++i)
        sites.emplace_back(r.uniform(0, rows - 1.0), r.uniform(0, cols - 1.0));

    OrientationMap m;
    m.rows = rows;
    m.cols = cols;
    m.theta.resize(std::size_t(rows) * cols);
    std::vector<int> labels(m.theta.size());
    for (int row = 0; row < rows; ++row) {
        for (int col = 0; col < cols; ++col) {
            int best = 0;
            double best_d = 1e300;
            for (int i = 0; i < k; ++i) {
                double d = std::hypot(row - sites[i].first, col - sites[i].second);
                if (d < best_d) {
                    best_d = d;
                    best = i;
                }
            }
            labels[std::size_t(row) * cols + col] = best;
            m.at(row, col) = orientations[best];
        }
    }

    Dataset d;
    d.kind = model::PayloadKind::orientation_map;
    d.payload = std::move(m);
    json jsites = json::array();
    for (const auto& s : sites) jsites.push_back({s.first, s.second});
    d.provenance = base_prov("ebsd", seed,
                             {{"orientations", orientations},
                              {"sites", jsites},
                              {"labels", labels},
                              {"grains", k}});
    return d;
}

}  // namespace

const std::set<std::string>& known_modalities() {
    static const std::set<std::string> m = {"ftir", "nmr", "tga", "afm", "ebsd"};
    return m;
}

Dataset generate_synthetic(const std::string& modality, const json& spec,
                           std::uint64_t seed) {
    if (!spec.is_object() && !spec.is_null()) bad_spec("spec must be a JSON object");
    const json& s = spec.is_null() ? json::object() : spec;
    if (modality == "ftir") return gen_ftir(s, seed);
    if (modality == "nmr") return gen_nmr(s, seed);
    if (modality == "tga") return gen_tga(s, seed);
    if (modality == "afm") return gen_afm(s, seed);
    if (modality == "ebsd") return gen_ebsd(s, seed);
    bad_spec("unknown modality '" + modality + "'");
}

}  // namespace aurakit::sim

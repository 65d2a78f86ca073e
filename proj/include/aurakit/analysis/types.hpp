#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aurakit::analysis {

// 1-D spectrum or curve; x strictly increasing, |x| == |y| >= 2.
struct Spectrum {
    std::vector<double> x;
    std::vector<double> y;
    std::string x_unit;  // "nm", "cm-1", "keV", "ppm", "K", ...
    std::string y_unit;
};

struct ComplexSpectrum {
    std::vector<double> x;  // ppm axis
    std::vector<std::complex<double>> v;
    std::string x_unit = "ppm";
};

struct Peak {
    double position = 0;
    double height = 0;
    double prominence = 0;
    int index = 0;
};

struct GaussianFit {
    double amplitude = 0;
    double center = 0;
    double sigma = 0;
    double offset = 0;  // shared across components of one fit
    double rmse = 0;
    bool converged = false;
    int iterations = 0;
};

struct BaselineResult {
    std::vector<double> baseline;
    std::vector<double> corrected;  // y - baseline
};

struct TgaStep {
    double onset_temperature = 0;      // T_d, K
    double mass_loss_pct = 0;          // (0, 100]
    double dtg_peak_temperature = 0;   // K
    std::optional<double> enthalpy;    // J/g, when a heat-flow channel is given
};

struct AfmRoughness {
    double ra = 0;
    double rq = 0;
};

enum class CompositionBasis { weight, atomic };

struct CompositionEntry {
    std::string element;
    double atomic_mass = 0;  // g/mol
    double fraction = 0;     // percent
};

struct Composition {
    std::vector<CompositionEntry> entries;
    CompositionBasis basis = CompositionBasis::weight;
};

// Row-major scalar grids.
struct HeightMap {
    int rows = 0;
    int cols = 0;
    std::vector<double> z;

    double at(int r, int c) const { return z[std::size_t(r) * cols + c]; }
    double& at(int r, int c) { return z[std::size_t(r) * cols + c]; }
};

struct GrayImage {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> px;

    std::uint8_t at(int r, int c) const { return px[std::size_t(r) * cols + c]; }
    std::uint8_t& at(int r, int c) { return px[std::size_t(r) * cols + c]; }
};

struct FloatImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> px;

    double at(int r, int c) const { return px[std::size_t(r) * cols + c]; }
    double& at(int r, int c) { return px[std::size_t(r) * cols + c]; }
};

struct RgbImage {
    int rows = 0;
    int cols = 0;
    std::vector<std::array<std::uint8_t, 3>> px;

    const std::array<std::uint8_t, 3>& at(int r, int c) const {
        return px[std::size_t(r) * cols + c];
    }
    std::array<std::uint8_t, 3>& at(int r, int c) { return px[std::size_t(r) * cols + c]; }
};

// rows = angles (uniform over [0, 180)), cols = detectors
struct Sinogram {
    int n_angles = 0;
    int n_detectors = 0;
    std::vector<double> v;

    double at(int a, int d) const { return v[std::size_t(a) * n_detectors + d]; }
    double& at(int a, int d) { return v[std::size_t(a) * n_detectors + d]; }
};

// Scalar 2-D orientations in degrees, values in [0, 180).
struct OrientationMap {
    int rows = 0;
    int cols = 0;
    std::vector<double> theta;

    double at(int r, int c) const { return theta[std::size_t(r) * cols + c]; }
    double& at(int r, int c) { return theta[std::size_t(r) * cols + c]; }
};

struct PoreRecord {
    double area_px = 0;
    double equivalent_diameter_px = 0;
    double centroid_r = 0;
    double centroid_c = 0;
    std::vector<std::pair<int, int>> boundary;  // (row, col)
};

struct PoreStats {
    int count = 0;
    std::vector<PoreRecord> pores;
    double porosity = 0;  // kept pore area / image area
};

enum class BoundaryKind : std::uint8_t { none = 0, low_angle = 1, high_angle = 2 };

struct GrainStats {
    int rows = 0;
    int cols = 0;
    std::vector<int> labels;  // grain id per pixel, 0-based
    int grain_count = 0;
    std::vector<std::int64_t> grain_areas;        // indexed by grain id
    std::vector<BoundaryKind> boundary;           // per pixel
    std::vector<std::int64_t> misorientation_histogram;  // 1-degree bins [0, 180)

    int label_at(int r, int c) const { return labels[std::size_t(r) * cols + c]; }
};

struct FtirBand {
    std::string group;
    double lo = 0;  // cm-1
    double hi = 0;
};

struct FtirAssignment {
    double position = 0;  // cm-1
    std::optional<FtirBand> band;  // nullopt = unassigned
};

}  // namespace aurakit::analysis

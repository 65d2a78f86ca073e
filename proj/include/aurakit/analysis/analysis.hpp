#pragma once

#include <optional>
#include <utility>

#include "aurakit/analysis/types.hpp"

// Analytical operations. All functions here are pure: identical inputs give
// identical outputs, no hidden RNG. Errors are reported as aurakit::Error
// with the codes noted per function.
namespace aurakit::analysis {

// --- spectra ---------------------------------------------------------------

// Asymmetric-least-squares baseline: penalized smoother with weight p for
// points above the running baseline and 1-p below, second-difference penalty
// lambda, iterated n_iter times. Errors: SingularSystem.
BaselineResult baseline_asls(const Spectrum& s, double lambda, double p, int n_iter);

// Local maxima with topographic prominence >= min_prominence; among maxima
// closer than min_distance samples the higher one wins (tie: lower index).
// Returned sorted by position. Plateaus count once, at their left edge.
std::vector<Peak> detect_peaks(const Spectrum& s, double min_prominence, int min_distance);

struct GaussianInit {
    double amplitude = 0;
    double center = 0;
    double sigma = 0;
};

// Fits sum_j A_j exp(-(x-mu_j)^2 / (2 sigma_j^2)) + c over [interval_lo,
// interval_hi] by damped (Levenberg-style) least squares. When init is empty
// the k most prominent peaks seed the fit. Errors: TooFewSamples,
// DegenerateInit.
std::vector<GaussianFit> fit_gaussians(const Spectrum& s, double interval_lo,
                                       double interval_hi, int k,
                                       const std::vector<GaussianInit>& init = {});

// Squared-residual cost and its analytic gradient for the Gaussian-sum model
// over an interval, on the flat parameter vector [A, mu, sigma]*k + [c].
// The gradient is the same code path the fitter iterates on.
double gaussian_cost(const Spectrum& s, double interval_lo, double interval_hi,
                     const std::vector<double>& params);
std::vector<double> gaussian_cost_gradient(const Spectrum& s, double interval_lo,
                                           double interval_hi,
                                           const std::vector<double>& params);

// Each peak is matched to the band minimizing distance-to-range among bands
// within tol; ties prefer the narrower range, then table order.
std::vector<FtirAssignment> ftir_assign(const std::vector<Peak>& peaks,
                                        const std::vector<FtirBand>& band_table, double tol);

// The 20-entry default band table shipped with the library.
const std::vector<FtirBand>& default_ftir_bands();

// --- NMR -------------------------------------------------------------------

// Multiplies each point by exp(-i (phi0 + phi1 (x - pivot)/span) pi/180).
ComplexSpectrum nmr_phase(const ComplexSpectrum& cs, double phi0_deg, double phi1_deg,
                          double pivot_ppm);

// (phi0, phi1) minimizing sum |Im| of the phased spectrum: 1-degree phi0 /
// 2-degree phi1 grid, then coordinate descent to 0.01 degrees. Among the
// sign-flip pair of minimizers the one giving positive total real signal is
// returned. Deterministic.
std::pair<double, double> nmr_autophase(const ComplexSpectrum& cs);

// Trapezoidal integrals over each (lo, hi) ppm range, scaled so that ranges
// [reference] integrates to reference_value. Errors: EmptyRange.
std::vector<double> nmr_integrate(const Spectrum& real_spectrum,
                                  const std::vector<std::pair<double, double>>& ranges,
                                  int reference, double reference_value);

// --- thermal ---------------------------------------------------------------

// DTG peak based step detection on a TGA curve (T in K, mass in %).
// Errors: NonMonotonicTemperature.
std::vector<TgaStep> tga_steps(const Spectrum& curve,
                               const std::optional<Spectrum>& heat_flow,
                               int smooth_window, double min_loss_pct);

// --- AFM -------------------------------------------------------------------

// Subtracts the least-squares plane a + b x + c y.
HeightMap afm_level_plane(const HeightMap& h);

AfmRoughness afm_roughness(const HeightMap& h);

// n bilinear samples along the segment p0 -> p1 (x = col, y = row, pixel
// units); distance axis from p0. Errors: OutOfBounds.
Spectrum afm_profile(const HeightMap& h, std::pair<double, double> p0,
                     std::pair<double, double> p1, int n);

// --- imaging ---------------------------------------------------------------

struct PoreThreshold {
    // Otsu when fixed is unset, else the fixed level; pore = value < level.
    std::optional<int> fixed;

    static PoreThreshold otsu() { return {}; }
    static PoreThreshold at(int v) { return {v}; }
};

PoreStats sem_pores(const GrayImage& img, PoreThreshold threshold, int min_area);

// Otsu's threshold over the 256-bin histogram (maximizes between-class
// variance; exposed for tests).
int otsu_threshold(const GrayImage& img);

// --- EDS -------------------------------------------------------------------

// Errors: ZeroMass.
Composition eds_convert(const Composition& c, CompositionBasis to);

// (max in peak window - mean of bg window) / stddev of bg window.
// 0/0 -> 0; x/0 -> +inf. Errors: EmptyWindow.
double eds_snr(const Spectrum& s, std::pair<double, double> peak_window,
               std::pair<double, double> bg_window);

// --- tomography ------------------------------------------------------------

enum class FbpFilter { ramlak, none };

// Parallel-beam filtered back-projection; angles uniform over [0, 180).
// Output is n_detectors x n_detectors. Errors: InvalidGeometry.
FloatImage fbp_reconstruct(const Sinogram& sg, FbpFilter filter);

// --- EBSD ------------------------------------------------------------------

// Misorientation between 4-neighbours is min(|dt|, 180 - |dt|); pixels merge
// into a grain below low_angle. Errors: InvalidThresholds.
GrainStats ebsd_grains(const OrientationMap& m, double low_angle, double high_angle);

// Hue = theta/180 * 360 at full saturation/value.
RgbImage ipf_colormap(const OrientationMap& m);

}  // namespace aurakit::analysis

#include <algorithm>
#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

namespace {

// parameter layout: [A0, mu0, sigma0, ..., A_{k-1}, mu_{k-1}, sigma_{k-1}, c]

double model_eval(const std::vector<double>& theta, double x) {
    const int k = int((theta.size() - 1) / 3);
    double v = theta.back();
    for (int j = 0; j < k; ++j) {
        double a = theta[3 * j], mu = theta[3 * j + 1], sg = theta[3 * j + 2];
        double t = (x - mu) / sg;
        v += a * std::exp(-0.5 * t * t);
    }
    return v;
}

// Dense symmetric solve via Gaussian elimination with partial pivoting.
bool solve_dense(std::vector<double> a, std::vector<double> b, int n,
                 std::vector<double>& out) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * out[c];
        out[r] = s / a[r * n + r];
    }
    return true;
}

struct Window {
    std::vector<double> x, y;
};

Window clip_interval(const Spectrum& s, double lo, double hi) {
    Window w;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (s.x[i] >= lo && s.x[i] <= hi) {
            w.x.push_back(s.x[i]);
            w.y.push_back(s.y[i]);
        }
    }
    return w;
}

double cost_of(const std::vector<double>& theta, const Window& w) {
    double c = 0;
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        double r = model_eval(theta, w.x[i]) - w.y[i];
        c += r * r;
    }
    return c;
}

// residual Jacobian row for point x
void jacobian_row(const std::vector<double>& theta, double x, std::vector<double>& row) {
    const int k = int((theta.size() - 1) / 3);
    for (int j = 0; j < k; ++j) {
        double a = theta[3 * j], mu = theta[3 * j + 1], sg = theta[3 * j + 2];
        double d = x - mu;
        double e = std::exp(-0.5 * d * d / (sg * sg));
        row[3 * j] = e;
        row[3 * j + 1] = a * e * d / (sg * sg);
        row[3 * j + 2] = a * e * d * d / (sg * sg * sg);
    }
    row[3 * k] = 1.0;
}

}  // namespace

std::vector<double> gaussian_cost_gradient(const Spectrum& s, double interval_lo,
                                           double interval_hi,
                                           const std::vector<double>& params) {
    Window w = clip_interval(s, interval_lo, interval_hi);
    const int np = int(params.size());
    std::vector<double> g(np, 0.0), row(np);
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        double r = model_eval(params, w.x[i]) - w.y[i];
        jacobian_row(params, w.x[i], row);
        for (int q = 0; q < np; ++q) g[q] += 2.0 * r * row[q];
    }
    return g;
}

double gaussian_cost(const Spectrum& s, double interval_lo, double interval_hi,
                     const std::vector<double>& params) {
    return cost_of(params, clip_interval(s, interval_lo, interval_hi));
}

std::vector<GaussianFit> fit_gaussians(const Spectrum& s, double interval_lo,
                                       double interval_hi, int k,
                                       const std::vector<GaussianInit>& init) {
    if (k < 1) throw Error("InvalidArgument", "k must be >= 1");
    Window w = clip_interval(s, interval_lo, interval_hi);
    const int n = int(w.x.size());
    if (n < 3 * k + 1)
        throw Error("TooFewSamples", "interval must contain at least 3k+1 samples");

    const int np = 3 * k + 1;
    std::vector<double> theta(np, 0.0);
    double width = w.x.back() - w.x.front();

    if (!init.empty()) {
        if (int(init.size()) != k)
            throw Error("InvalidArgument", "init must supply exactly k components");
        for (int j = 0; j < k; ++j) {
            theta[3 * j] = init[j].amplitude;
            theta[3 * j + 1] = init[j].center;
            theta[3 * j + 2] = std::abs(init[j].sigma) > 0 ? std::abs(init[j].sigma)
                                                           : width / (4.0 * k);
        }
        theta[np - 1] = *std::min_element(w.y.begin(), w.y.end());
    } else {
        Spectrum clipped{w.x, w.y, s.x_unit, s.y_unit};
        auto peaks = detect_peaks(clipped, 0.0, 1);
        std::sort(peaks.begin(), peaks.end(),
                  [](const Peak& a, const Peak& b) { return a.prominence > b.prominence; });
        if (int(peaks.size()) < k)
            throw Error("DegenerateInit",
                        "fewer detectable peaks than components and no init given");
        peaks.resize(k);
        double base = *std::min_element(w.y.begin(), w.y.end());
        for (int j = 0; j < k; ++j) {
            theta[3 * j] = peaks[j].height - base;
            theta[3 * j + 1] = peaks[j].position;
            theta[3 * j + 2] = width / (4.0 * k);
        }
        theta[np - 1] = base;
    }

    double cost = cost_of(theta, w);
    double lm_lambda = 1e-3;
    bool converged = false;
    int iters = 0;
    const int max_iters = 200;

    std::vector<double> jtj(np * np), jtr(np), row(np);
    while (iters < max_iters) {
        ++iters;
        std::fill(jtj.begin(), jtj.end(), 0.0);
        std::fill(jtr.begin(), jtr.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            double r = model_eval(theta, w.x[i]) - w.y[i];
            jacobian_row(theta, w.x[i], row);
            for (int a = 0; a < np; ++a) {
                jtr[a] += row[a] * r;
                for (int b = a; b < np; ++b) jtj[a * np + b] += row[a] * row[b];
            }
        }
        for (int a = 0; a < np; ++a)
            for (int b = 0; b < a; ++b) jtj[a * np + b] = jtj[b * np + a];

        double gmax = 0;
        for (int a = 0; a < np; ++a) gmax = std::max(gmax, std::abs(2.0 * jtr[a]));
        if (gmax < 1e-12) {
            converged = true;
            break;
        }

        // one damped step, retrying with larger damping until the cost drops
        bool stepped = false;
        for (int attempt = 0; attempt < 32; ++attempt) {
            std::vector<double> damped = jtj;
            for (int a = 0; a < np; ++a) {
                double d = jtj[a * np + a];
                damped[a * np + a] += lm_lambda * (d > 0 ? d : 1.0);
            }
            std::vector<double> rhs(np), delta;
            for (int a = 0; a < np; ++a) rhs[a] = -jtr[a];
            if (!solve_dense(damped, rhs, np, delta)) {
                lm_lambda *= 8.0;
                continue;
            }
            std::vector<double> trial = theta;
            for (int a = 0; a < np; ++a) trial[a] += delta[a];
            double trial_cost = cost_of(trial, w);
            if (std::isfinite(trial_cost) && trial_cost <= cost) {
                double rel = cost > 0 ? (cost - trial_cost) / cost : 0.0;
                theta = std::move(trial);
                bool done = rel < 1e-10;
                cost = trial_cost;
                lm_lambda = std::max(lm_lambda / 8.0, 1e-12);
                stepped = true;
                if (done) converged = true;
                break;
            }
            lm_lambda *= 8.0;
        }
        if (!stepped || converged) {
            if (!stepped) converged = true;  // no descent direction left
            break;
        }
    }

    double rmse = std::sqrt(cost_of(theta, w) / n);
    std::vector<GaussianFit> out;
    out.reserve(k);
    for (int j = 0; j < k; ++j) {
        GaussianFit f;
        f.amplitude = theta[3 * j];
        f.center = theta[3 * j + 1];
        f.sigma = std::abs(theta[3 * j + 2]);  // sign normalization
        f.offset = theta[np - 1];
        f.rmse = rmse;
        f.converged = converged;
        f.iterations = iters;
        out.push_back(f);
    }
    std::sort(out.begin(), out.end(),
              [](const GaussianFit& a, const GaussianFit& b) { return a.center < b.center; });
    return out;
}

}  // namespace aurakit::analysis

#include <algorithm>
#include <cmath>

#include "aurakit/analysis/analysis.hpp"
#include "aurakit/core/error.hpp"

namespace aurakit::analysis {

namespace {

void require_spectrum(const Spectrum& s) {
    if (s.x.size() != s.y.size() || s.x.size() < 2)
        throw Error("InvalidSpectrum", "spectrum needs |x| == |y| >= 2");
    for (std::size_t i = 1; i < s.x.size(); ++i)
        if (!(s.x[i] > s.x[i - 1]))
            throw Error("InvalidSpectrum", "x axis must be strictly increasing");
}

// Symmetric positive-definite banded system, bandwidth 2 (the AsLS normal
// equations are pentadiagonal). band[i][d] holds A[i][i-d].
class BandedSpd {
public:
    explicit BandedSpd(std::size_t n) : n_(n), band_(n * 3, 0.0) {}

    double& at(std::size_t i, std::size_t d) { return band_[i * 3 + d]; }
    double at(std::size_t i, std::size_t d) const { return band_[i * 3 + d]; }

    void add(std::size_t i, std::size_t j, double v) {
        if (j > i) std::swap(i, j);
        at(i, i - j) += v;
    }

    // Cholesky solve with one step of iterative refinement; the penalty
    // matrix is stiff for large lambda and the refinement recovers the
    // digits plain back-substitution loses. Throws SingularSystem on a bad
    // pivot.
    std::vector<double> solve(const std::vector<double>& rhs) {
        original_ = band_;
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t lo = i >= 2 ? i - 2 : 0;
            for (std::size_t j = lo; j <= i; ++j) {
                double s = at(i, i - j);
                std::size_t klo = (i >= 2) ? i - 2 : 0;
                if (j >= 2 && j - 2 > klo) klo = j - 2;
                for (std::size_t k = klo; k < j; ++k) s -= at(i, i - k) * at(j, j - k);
                if (j < i) {
                    at(i, i - j) = s / at(j, 0);
                } else {
                    if (!(s > 0.0) || !std::isfinite(s))
                        throw Error("SingularSystem", "baseline penalty solve is singular");
                    at(i, 0) = std::sqrt(s);
                }
            }
        }
        auto x = substitute(rhs);
        auto r = residual(rhs, x);
        auto dx = substitute(r);
        for (std::size_t i = 0; i < n_; ++i) x[i] += dx[i];
        return x;
    }

private:
    // forward/backward substitution against the factored band
    std::vector<double> substitute(std::vector<double> rhs) const {
        for (std::size_t i = 0; i < n_; ++i) {
            double s = rhs[i];
            for (std::size_t d = 1; d <= 2 && d <= i; ++d) s -= at(i, d) * rhs[i - d];
            rhs[i] = s / at(i, 0);
        }
        for (std::size_t ii = n_; ii-- > 0;) {
            double s = rhs[ii];
            for (std::size_t d = 1; d <= 2 && ii + d < n_; ++d) s -= at(ii + d, d) * rhs[ii + d];
            rhs[ii] = s / at(ii, 0);
        }
        return rhs;
    }

    // rhs - A x with the unfactored matrix
    std::vector<double> residual(const std::vector<double>& rhs,
                                 const std::vector<double>& x) const {
        std::vector<double> r(rhs);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t d = 0; d <= 2; ++d) {
                if (d <= i) r[i] -= original_[i * 3 + d] * x[i - d];
                if (d > 0 && i + d < n_) r[i] -= original_[(i + d) * 3 + d] * x[i + d];
            }
        }
        return r;
    }

    std::size_t n_;
    std::vector<double> band_;
    std::vector<double> original_;
};

}  // namespace

BaselineResult baseline_asls(const Spectrum& s, double lambda, double p, int n_iter) {
    require_spectrum(s);
    if (!(lambda > 0)) throw Error("InvalidArgument", "lambda must be > 0");
    if (!(p > 0 && p < 1)) throw Error("InvalidArgument", "p must be in (0,1)");
    if (n_iter < 1) throw Error("InvalidArgument", "n_iter must be >= 1");

    const std::size_t n = s.y.size();
    std::vector<double> w(n, 1.0);
    std::vector<double> z(n, 0.0);

    for (int it = 0; it < n_iter; ++it) {
        BandedSpd a(n);
        // lambda * D'D for the (n-2) x n second-difference operator
        if (n >= 3) {
            for (std::size_t k = 0; k + 2 < n; ++k) {
                static const double c[3] = {1.0, -2.0, 1.0};
                for (int r = 0; r < 3; ++r)
                    for (int q = 0; q <= r; ++q) a.add(k + r, k + q, lambda * c[r] * c[q]);
            }
        }
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            a.add(i, i, w[i]);
            rhs[i] = w[i] * s.y[i];
        }
        z = a.solve(rhs);
        for (std::size_t i = 0; i < n; ++i) w[i] = s.y[i] > z[i] ? p : 1.0 - p;
    }

    BaselineResult out;
    out.baseline = std::move(z);
    out.corrected.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.corrected[i] = s.y[i] - out.baseline[i];
    return out;
}

namespace {

// Indices of interior local maxima; a plateau counts once at its left edge.
std::vector<int> local_maxima(const std::vector<double>& y) {
    std::vector<int> out;
    const int n = int(y.size());
    int i = 1;
    while (i < n - 1) {
        if (y[i] > y[i - 1]) {
            int j = i;
            while (j + 1 < n && y[j + 1] == y[i]) ++j;
            if (j + 1 < n && y[j + 1] < y[i]) out.push_back(i);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

double prominence_at(const std::vector<double>& y, int p) {
    const int n = int(y.size());
    const double h = y[p];
    double left_min = h;
    for (int i = p - 1; i >= 0; --i) {
        if (y[i] > h) break;
        left_min = std::min(left_min, y[i]);
    }
    double right_min = h;
    for (int i = p + 1; i < n; ++i) {
        if (y[i] > h) break;
        right_min = std::min(right_min, y[i]);
    }
    return h - std::max(left_min, right_min);
}

}  // namespace

std::vector<Peak> detect_peaks(const Spectrum& s, double min_prominence, int min_distance) {
    require_spectrum(s);
    if (min_prominence < 0) throw Error("InvalidArgument", "min_prominence must be >= 0");
    if (min_distance < 1) throw Error("InvalidArgument", "min_distance must be >= 1");

    std::vector<Peak> candidates;
    for (int idx : local_maxima(s.y)) {
        double prom = prominence_at(s.y, idx);
        if (prom >= min_prominence)
            candidates.push_back(Peak{s.x[idx], s.y[idx], prom, idx});
    }

    // distance pruning: higher peaks win, ties to the lower index
    std::vector<int> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (candidates[a].height != candidates[b].height)
            return candidates[a].height > candidates[b].height;
        return candidates[a].index < candidates[b].index;
    });
    std::vector<bool> keep(candidates.size(), false);
    std::vector<int> kept_indices;
    for (int oi : order) {
        bool blocked = false;
        for (int ki : kept_indices) {
            if (std::abs(candidates[oi].index - candidates[ki].index) < min_distance) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            keep[oi] = true;
            kept_indices.push_back(oi);
        }
    }

    std::vector<Peak> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (keep[i]) out.push_back(candidates[i]);
    std::sort(out.begin(), out.end(), [](const Peak& a, const Peak& b) { return a.position < b.position; });
    return out;
}

std::vector<FtirAssignment> ftir_assign(const std::vector<Peak>& peaks,
                                        const std::vector<FtirBand>& band_table, double tol) {
    if (tol < 0) throw Error("InvalidArgument", "tol must be >= 0");
    for (const auto& b : band_table)
        if (!(b.lo <= b.hi)) throw Error("InvalidArgument", "band range must have lo <= hi");

    std::vector<FtirAssignment> out;
    out.reserve(peaks.size());
    for (const auto& pk : peaks) {
        const FtirBand* best = nullptr;
        double best_dist = 0;
        for (const auto& b : band_table) {
            double dist = 0;
            if (pk.position < b.lo)
                dist = b.lo - pk.position;
            else if (pk.position > b.hi)
                dist = pk.position - b.hi;
            if (dist > tol) continue;
            if (!best || dist < best_dist ||
                (dist == best_dist && (b.hi - b.lo) < (best->hi - best->lo))) {
                best = &b;
                best_dist = dist;
            }
        }
        FtirAssignment a;
        a.position = pk.position;
        if (best) a.band = *best;
        out.push_back(std::move(a));
    }
    return out;
}

const std::vector<FtirBand>& default_ftir_bands() {
    static const std::vector<FtirBand> table = {
        {"O-H stretch (alcohol)", 3200, 3550},
        {"N-H stretch", 3300, 3500},
        {"O-H stretch (carboxylic acid)", 2500, 3300},
        {"C-H stretch (alkene)", 3010, 3100},
        {"C-H stretch (alkane)", 2850, 2960},
        {"C#N stretch (nitrile)", 2210, 2260},
        {"C#C stretch (alkyne)", 2100, 2200},
        {"C=O stretch (ester)", 1735, 1750},
        {"C=O stretch (aldehyde)", 1720, 1740},
        {"C=O stretch", 1700, 1725},
        {"C=O stretch (amide I)", 1630, 1700},
        {"C=C stretch (alkene)", 1620, 1680},
        {"N-H bend", 1550, 1640},
        {"C=C stretch (aromatic)", 1585, 1600},
        {"C=C stretch (aromatic ring)", 1400, 1500},
        {"C-H bend (alkane)", 1365, 1485},
        {"S=O stretch (sulfoxide)", 1030, 1070},
        {"C-O stretch", 1000, 1300},
        {"C-N stretch (amine)", 1020, 1250},
        {"C-H bend (aromatic, oop)", 690, 900},
    };
    return table;
}

}  // namespace aurakit::analysis

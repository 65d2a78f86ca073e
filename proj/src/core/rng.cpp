#include "aurakit/core/rng.hpp"

#include <cmath>

namespace aurakit {

namespace {

inline std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

StreamRng::StreamRng(std::uint64_t seed, std::string_view stream)
    : key_(splitmix(seed) ^ fnv1a64(stream)) {}

std::uint64_t StreamRng::next_u64() {
    return splitmix(key_ ^ (0x9e3779b97f4a7c15ull * ++counter_));
}

double StreamRng::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double StreamRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double StreamRng::normal() {
    double u1 = uniform();
    double u2 = uniform();
    // avoid log(0)
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::int64_t StreamRng::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean <= kPoissonExactLimit) {
        std::int64_t k = 0;
        double acc = 0.0;
        for (;;) {
            double u = uniform();
            if (u >= 1.0) u = 1.0 - 0x1.0p-53;
            acc += -std::log(1.0 - u);
            if (acc > mean) break;
            ++k;
        }
        return k;
    }
    double v = std::round(normal(mean, std::sqrt(mean)));
    return v < 0.0 ? 0 : std::int64_t(v);
}

}  // namespace aurakit

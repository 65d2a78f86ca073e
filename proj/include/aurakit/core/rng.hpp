#pragma once

#include <cstdint>
#include <string_view>

namespace aurakit {

// Counter-based generator keyed by (seed, stream id). Output depends only on
// the key and the number of values drawn so far, so replay is bit-identical
// across platforms. Platform default generators are deliberately not used.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::string_view stream);

    std::uint64_t next_u64();

    // [0, 1)
    double uniform();
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller; consumes exactly two draws.
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Poisson with the given mean. Exact (interarrival method) for small
    // means, rounded normal approximation above kPoissonExactLimit.
    std::int64_t poisson(double mean);

    static constexpr double kPoissonExactLimit = 64.0;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t fnv1a64(std::string_view s);

}  // namespace aurakit

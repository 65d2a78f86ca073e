#pragma once

#include <cstdint>

#include "aurakit/analysis/types.hpp"

namespace aurakit::sim {

// Parallel-beam line integrals of the phantom at angles k*180/n_angles,
// detectors centered on the image, bilinear sampling along each ray.
// Deterministic. Errors: InvalidGeometry (n_angles < 1 or n_detectors
// smaller than the phantom side).
analysis::Sinogram simulate_sinogram(const analysis::FloatImage& phantom, int n_angles,
                                     int n_detectors);

// Anti-aliased centered disk, value `value` inside radius r.
analysis::FloatImage make_disk_phantom(int n, double radius, double value = 1.0);

// Seeded phantom for the micro-CT model: a support disk with a few
// elliptical density inclusions.
analysis::FloatImage make_ct_phantom(std::uint64_t seed, int n);

}  // namespace aurakit::sim

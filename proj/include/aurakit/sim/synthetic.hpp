#pragma once

#include <cstdint>
#include <string>

#include "aurakit/sim/dataset.hpp"

namespace aurakit::sim {

// Synthetic-data generators for the modalities without a GUI machine:
// "ftir", "nmr", "tga", "afm", "ebsd". `spec` is a JSON object of generator
// parameters (all optional; see the per-modality defaults in the
// implementation). The embedded ground truth lands in provenance so analysis
// operations can be tested against it. Errors: InvalidSpec.
Dataset generate_synthetic(const std::string& modality, const nlohmann::json& spec,
                           std::uint64_t seed);

const std::set<std::string>& known_modalities();

}  // namespace aurakit::sim

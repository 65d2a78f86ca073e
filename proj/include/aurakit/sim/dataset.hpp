#pragma once

#include <optional>
#include <variant>

#include <json.hpp>

#include "aurakit/analysis/types.hpp"
#include "aurakit/model/manifest.hpp"

namespace aurakit::sim {

// TGA export: mass-vs-temperature plus an optional heat-flow channel.
struct TgaCurve {
    analysis::Spectrum mass;
    std::optional<analysis::Spectrum> heat_flow;
};

using Payload = std::variant<analysis::Spectrum, analysis::ComplexSpectrum,
                             analysis::GrayImage, analysis::FloatImage, analysis::HeightMap,
                             analysis::Sinogram, analysis::OrientationMap, TgaCurve>;

// Typed measurement payload with provenance: (model id, seed, clock,
// parameter snapshot) plus any generator ground truth needed as a test
// oracle.
struct Dataset {
    model::PayloadKind kind = model::PayloadKind::spectrum;
    Payload payload;
    nlohmann::json provenance;

    template <typename T>
    const T& as() const {
        return std::get<T>(payload);
    }
};

bool dataset_equal(const Dataset& a, const Dataset& b);

}  // namespace aurakit::sim

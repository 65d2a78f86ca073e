#pragma once

#include <filesystem>

#include "aurakit/analysis/types.hpp"
#include "aurakit/sim/dataset.hpp"

namespace aurakit::sim {

// On-disk forms: spectra and curves as CSV with "# unit:" header comments,
// 8-bit images as portable graymaps (P2), float grids (height maps,
// sinograms, orientation maps, float images) as a text grid. Provenance
// goes to "<path>.prov.json".
std::string dataset_extension(model::PayloadKind kind);

// Writes payload and provenance sidecar; returns the payload path.
std::filesystem::path write_dataset(const Dataset& ds, const std::filesystem::path& path);

// Reads a dataset back (format detected from the content, provenance from
// the sidecar when present). Errors: IoError, ParseError.
Dataset read_dataset(const std::filesystem::path& path);

// Composition tables for the EDS conversion ops.
void write_composition(const analysis::Composition& c, const std::filesystem::path& path);
analysis::Composition read_composition(const std::filesystem::path& path);

// Simple CSV table (all cells pre-rendered).
void write_table(const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows,
                 const std::filesystem::path& path);

}  // namespace aurakit::sim

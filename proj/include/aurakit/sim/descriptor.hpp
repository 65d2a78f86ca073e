#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aurakit/model/manifest.hpp"
#include "aurakit/model/value.hpp"

namespace aurakit::sim {

enum class WidgetKind {
    button,
    numeric_field,
    text_field,
    dropdown,
    toggle,
    readout,
    progress,
    preview
};

std::string widget_kind_name(WidgetKind k);
std::optional<WidgetKind> widget_kind_from(const std::string& s);

struct WidgetSpec {
    std::string id;      // unique across the model
    WidgetKind kind = WidgetKind::button;
    std::string screen;
    std::optional<std::string> unit;  // "kV", "nm", "ms", ...
    // numeric_field
    double min = 0;
    double max = 0;
    bool integral = false;
    // dropdown
    std::vector<std::string> options;
    // readout value type (text or real)
    model::ValueType readout_type = model::ValueType::text;
    model::Value initial;

    // value type as seen from DSL conditions; nullopt = not readable
    std::optional<model::ValueType> value_type() const;
    bool writable() const {
        return kind == WidgetKind::numeric_field || kind == WidgetKind::text_field ||
               kind == WidgetKind::toggle;
    }
};

struct DatasetSpec {
    std::string id;
    model::PayloadKind payload_kind = model::PayloadKind::spectrum;
};

struct InstrumentDescriptor {
    std::string model_id;
    std::string version = "1.0.0";
    std::string initial_screen;
    std::vector<std::string> screens;
    std::vector<WidgetSpec> widgets;
    std::vector<DatasetSpec> exports;
    std::int64_t action_cost_ms = 50;

    const WidgetSpec* find_widget(const std::string& id) const;
    const DatasetSpec* find_export(const std::string& id) const;
};

// Versioned structured-text form shipped with the repo.
std::string descriptor_to_json(const InstrumentDescriptor& d, bool pretty = true);
InstrumentDescriptor descriptor_from_json(const std::string& text);

}  // namespace aurakit::sim

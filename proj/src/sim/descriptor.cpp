#include "aurakit/sim/descriptor.hpp"

#include <json.hpp>

#include "aurakit/core/error.hpp"

namespace aurakit::sim {

using nlohmann::json;

std::string widget_kind_name(WidgetKind k) {
    switch (k) {
        case WidgetKind::button: return "button";
        case WidgetKind::numeric_field: return "numeric_field";
        case WidgetKind::text_field: return "text_field";
        case WidgetKind::dropdown: return "dropdown";
        case WidgetKind::toggle: return "toggle";
        case WidgetKind::readout: return "readout";
        case WidgetKind::progress: return "progress";
        case WidgetKind::preview: return "preview";
    }
    return "?";
}

std::optional<WidgetKind> widget_kind_from(const std::string& s) {
    static const std::map<std::string, WidgetKind> names = {
        {"button", WidgetKind::button},
        {"numeric_field", WidgetKind::numeric_field},
        {"text_field", WidgetKind::text_field},
        {"dropdown", WidgetKind::dropdown},
        {"toggle", WidgetKind::toggle},
        {"readout", WidgetKind::readout},
        {"progress", WidgetKind::progress},
        {"preview", WidgetKind::preview},
    };
    auto it = names.find(s);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

std::optional<model::ValueType> WidgetSpec::value_type() const {
    switch (kind) {
        case WidgetKind::numeric_field:
        case WidgetKind::progress:
            return model::ValueType::real;
        case WidgetKind::text_field:
        case WidgetKind::dropdown:
            return model::ValueType::text;
        case WidgetKind::toggle:
            return model::ValueType::boolean;
        case WidgetKind::readout:
            return readout_type;
        case WidgetKind::button:
        case WidgetKind::preview:
            return std::nullopt;
    }
    return std::nullopt;
}

const WidgetSpec* InstrumentDescriptor::find_widget(const std::string& id) const {
    for (const auto& w : widgets)
        if (w.id == id) return &w;
    return nullptr;
}

const DatasetSpec* InstrumentDescriptor::find_export(const std::string& id) const {
    for (const auto& d : exports)
        if (d.id == id) return &d;
    return nullptr;
}

namespace {

json value_to_json(const model::Value& v) {
    if (v.is_int()) return v.as_int();
    if (v.is_real()) return v.as_real();
    if (v.is_bool()) return v.as_bool();
    return v.as_text();
}

model::Value value_from_json(const json& j) {
    if (j.is_number_integer()) return model::Value(j.get<std::int64_t>());
    if (j.is_number_float()) return model::Value(j.get<double>());
    if (j.is_boolean()) return model::Value(j.get<bool>());
    return model::Value(j.get<std::string>());
}

}  // namespace

std::string descriptor_to_json(const InstrumentDescriptor& d, bool pretty) {
    json j;
    j["model"] = d.model_id;
    j["version"] = d.version;
    j["initial_screen"] = d.initial_screen;
    j["screens"] = d.screens;
    j["action_cost_ms"] = d.action_cost_ms;
    j["widgets"] = json::array();
    for (const auto& w : d.widgets) {
        json jw;
        jw["id"] = w.id;
        jw["kind"] = widget_kind_name(w.kind);
        jw["screen"] = w.screen;
        if (w.unit) jw["unit"] = *w.unit;
        if (w.kind == WidgetKind::numeric_field) {
            jw["min"] = w.min;
            jw["max"] = w.max;
            jw["integral"] = w.integral;
        }
        if (w.kind == WidgetKind::dropdown) jw["options"] = w.options;
        if (w.kind == WidgetKind::readout)
            jw["readout_type"] = w.readout_type == model::ValueType::real ? "real" : "text";
        jw["initial"] = value_to_json(w.initial);
        j["widgets"].push_back(jw);
    }
    j["exports"] = json::array();
    for (const auto& e : d.exports)
        j["exports"].push_back(
            {{"id", e.id}, {"kind", model::payload_kind_name(e.payload_kind)}});
    return pretty ? j.dump(2) + "\n" : j.dump();
}

InstrumentDescriptor descriptor_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        InstrumentDescriptor d;
        d.model_id = j.at("model").get<std::string>();
        d.version = j.value("version", "1.0.0");
        d.initial_screen = j.at("initial_screen").get<std::string>();
        d.screens = j.at("screens").get<std::vector<std::string>>();
        d.action_cost_ms = j.value("action_cost_ms", std::int64_t(50));
        for (const auto& jw : j.value("widgets", json::array())) {
            WidgetSpec w;
            w.id = jw.at("id").get<std::string>();
            auto k = widget_kind_from(jw.at("kind").get<std::string>());
            if (!k) throw Error("InvalidDescriptor", "unknown widget kind");
            w.kind = *k;
            w.screen = jw.at("screen").get<std::string>();
            if (jw.contains("unit")) w.unit = jw["unit"].get<std::string>();
            if (w.kind == WidgetKind::numeric_field) {
                w.min = jw.at("min").get<double>();
                w.max = jw.at("max").get<double>();
                w.integral = jw.value("integral", false);
            }
            if (w.kind == WidgetKind::dropdown)
                w.options = jw.at("options").get<std::vector<std::string>>();
            if (w.kind == WidgetKind::readout)
                w.readout_type = jw.value("readout_type", std::string("text")) == "real"
                                     ? model::ValueType::real
                                     : model::ValueType::text;
            w.initial = value_from_json(jw.at("initial"));
            d.widgets.push_back(std::move(w));
        }
        for (const auto& je : j.value("exports", json::array())) {
            DatasetSpec e;
            e.id = je.at("id").get<std::string>();
            auto k = model::payload_kind_from(je.at("kind").get<std::string>());
            if (!k) throw Error("InvalidDescriptor", "unknown payload kind");
            e.payload_kind = *k;
            d.exports.push_back(std::move(e));
        }
        return d;
    } catch (const json::exception& e) {
        throw Error("InvalidDescriptor", std::string("malformed descriptor: ") + e.what());
    }
}

}  // namespace aurakit::sim

#include "aurakit/sim/simulator.hpp"

#include <charconv>
#include <cmath>

#include "aurakit/core/error.hpp"
#include "aurakit/core/text.hpp"

namespace aurakit::sim {

Simulator::Simulator(InstrumentDescriptor desc, std::uint64_t seed)
    : desc_(std::move(desc)), seed_(seed), screen_(desc_.initial_screen) {
    for (const auto& w : desc_.widgets) {
        Slot s{&w, w.initial, true};
        slots_.emplace(w.id, std::move(s));
    }
}

Simulator::Slot& Simulator::slot(const std::string& id) {
    auto it = slots_.find(id);
    if (it == slots_.end()) throw Error("UnknownWidget", "no widget '" + id + "'");
    return it->second;
}

const Simulator::Slot& Simulator::slot(const std::string& id) const {
    auto it = slots_.find(id);
    if (it == slots_.end()) throw Error("UnknownWidget", "no widget '" + id + "'");
    return it->second;
}

const model::Value& Simulator::value_of(const std::string& id) const { return slot(id).value; }

double Simulator::number_of(const std::string& id) const { return slot(id).value.as_real(); }

std::string Simulator::text_of(const std::string& id) const { return slot(id).value.as_text(); }

void Simulator::set_value(const std::string& id, model::Value v) {
    slot(id).value = std::move(v);
}

void Simulator::set_enabled(const std::string& id, bool enabled) {
    slot(id).enabled = enabled;
}

void Simulator::set_screen(const std::string& screen) { screen_ = screen; }

GuiSnapshot Simulator::observe() const {
    GuiSnapshot s;
    s.model_id = desc_.model_id;
    s.screen = screen_;
    s.clock_ms = clock_ms_;
    for (const auto& [id, sl] : slots_) {
        WidgetState st;
        st.id = id;
        st.kind = sl.spec->kind;
        st.value = sl.value;
        st.enabled = sl.enabled && sl.spec->screen == screen_;
        s.widgets.emplace(id, std::move(st));
    }
    return s;
}

void Simulator::apply_action(const Action& a) {
    const Slot& sl = slot(a.widget);  // throws UnknownWidget
    const WidgetSpec& spec = *sl.spec;
    if (spec.screen != screen_)
        throw Error("WidgetDisabled",
                    "widget '" + a.widget + "' is on screen '" + spec.screen +
                        "', not the active '" + screen_ + "'");
    if (!sl.enabled) throw Error("WidgetDisabled", "widget '" + a.widget + "' is disabled");

    switch (a.kind) {
        case Action::Kind::click: {
            if (spec.kind != WidgetKind::button)
                throw Error("KindMismatch", "click needs a button, '" + a.widget + "' is a " +
                                                widget_kind_name(spec.kind));
            on_click(a.widget);
            break;
        }
        case Action::Kind::type_text: {
            if (spec.kind == WidgetKind::numeric_field) {
                const std::string text = trim(a.text);
                char* end = nullptr;
                double v = std::strtod(text.c_str(), &end);
                if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
                    throw Error("ValueOutOfRange",
                                "'" + a.text + "' is not a number for '" + a.widget + "'");
                if (v < spec.min || v > spec.max)
                    throw Error("ValueOutOfRange",
                                "'" + a.widget + "' accepts [" + fmt_double(spec.min) + ", " +
                                    fmt_double(spec.max) + "], got " + fmt_double(v));
                if (spec.integral && v != std::floor(v))
                    throw Error("ValueOutOfRange",
                                "'" + a.widget + "' accepts integers only, got " + a.text);
                set_value(a.widget, spec.integral ? model::Value(std::int64_t(v))
                                                  : model::Value(v));
                on_value_set(a.widget);
            } else if (spec.kind == WidgetKind::text_field) {
                set_value(a.widget, model::Value(a.text));
                on_value_set(a.widget);
            } else {
                throw Error("KindMismatch", "cannot type into '" + a.widget + "' (" +
                                                widget_kind_name(spec.kind) + ")");
            }
            break;
        }
        case Action::Kind::select_option: {
            if (spec.kind != WidgetKind::dropdown)
                throw Error("KindMismatch", "'" + a.widget + "' is not a dropdown");
            bool found = false;
            for (const auto& o : spec.options) found |= (o == a.option);
            if (!found)
                throw Error("ValueOutOfRange",
                            "'" + a.option + "' is not an option of '" + a.widget + "'");
            set_value(a.widget, model::Value(a.option));
            on_value_set(a.widget);
            break;
        }
        case Action::Kind::toggle: {
            if (spec.kind != WidgetKind::toggle)
                throw Error("KindMismatch", "'" + a.widget + "' is not a toggle");
            set_value(a.widget, model::Value(!sl.value.as_bool()));
            on_value_set(a.widget);
            break;
        }
    }
    advance(desc_.action_cost_ms);
}

void Simulator::advance(std::int64_t dt_ms) {
    if (dt_ms < 0) throw Error("InvalidArgument", "advance needs dt >= 0");
    std::int64_t target = clock_ms_ + dt_ms;
    // fire completions at their exact times so the state at `target` does
    // not depend on the stepping pattern
    while (true) {
        auto deadline = next_deadline();
        if (!deadline || *deadline > target) break;
        clock_ms_ = std::max(clock_ms_, *deadline);
        on_deadline(clock_ms_);
    }
    clock_ms_ = target;
    refresh();
}

Dataset Simulator::export_dataset(const std::string& dataset_id) {
    if (!desc_.find_export(dataset_id))
        throw Error("UnknownDataset",
                    "model '" + desc_.model_id + "' exports no dataset '" + dataset_id + "'");
    return do_export(dataset_id);
}

nlohmann::json Simulator::provenance(nlohmann::json params) const {
    return nlohmann::json{{"model", desc_.model_id},
                          {"seed", seed_},
                          {"clock_ms", clock_ms_},
                          {"params", std::move(params)}};
}

}  // namespace aurakit::sim

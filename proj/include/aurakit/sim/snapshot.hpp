#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "aurakit/model/value.hpp"
#include "aurakit/sim/descriptor.hpp"

namespace aurakit::sim {

struct WidgetState {
    std::string id;
    WidgetKind kind = WidgetKind::button;
    model::Value value;
    bool enabled = false;  // actionable right now (on the active screen)
};

// Immutable structured observation of the whole model; widgets on inactive
// screens are present but disabled.
struct GuiSnapshot {
    std::string model_id;
    std::string screen;
    std::int64_t clock_ms = 0;
    std::map<std::string, WidgetState> widgets;

    const WidgetState* find(const std::string& id) const {
        auto it = widgets.find(id);
        return it == widgets.end() ? nullptr : &it->second;
    }
};

// One GUI input event.
struct Action {
    enum class Kind { click, type_text, select_option, toggle };

    Kind kind = Kind::click;
    std::string widget;
    std::string text;    // type_text
    std::string option;  // select_option

    static Action click(std::string w);
    static Action type_text(std::string w, std::string text);
    static Action select_option(std::string w, std::string option);
    static Action toggle(std::string w);
};

nlohmann::json action_to_json(const Action& a);
Action action_from_json(const nlohmann::json& j);
std::string action_str(const Action& a);

nlohmann::json snapshot_to_json(const GuiSnapshot& s);
GuiSnapshot snapshot_from_json(const nlohmann::json& j);

// Digest of the GUI state content: model, screen and widget states. The
// clock is excluded so that replays which reach the same state at different
// times compare equal.
std::string snapshot_digest(const GuiSnapshot& s);

}  // namespace aurakit::sim

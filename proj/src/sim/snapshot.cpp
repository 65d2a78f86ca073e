#include "aurakit/sim/snapshot.hpp"

#include "aurakit/core/error.hpp"
#include "aurakit/core/sha256.hpp"

namespace aurakit::sim {

using nlohmann::json;

Action Action::click(std::string w) {
    Action a;
    a.kind = Kind::click;
    a.widget = std::move(w);
    return a;
}

Action Action::type_text(std::string w, std::string text) {
    Action a;
    a.kind = Kind::type_text;
    a.widget = std::move(w);
    a.text = std::move(text);
    return a;
}

Action Action::select_option(std::string w, std::string option) {
    Action a;
    a.kind = Kind::select_option;
    a.widget = std::move(w);
    a.option = std::move(option);
    return a;
}

Action Action::toggle(std::string w) {
    Action a;
    a.kind = Kind::toggle;
    a.widget = std::move(w);
    return a;
}

json action_to_json(const Action& a) {
    json j;
    switch (a.kind) {
        case Action::Kind::click: j["kind"] = "click"; break;
        case Action::Kind::type_text:
            j["kind"] = "type_text";
            j["text"] = a.text;
            break;
        case Action::Kind::select_option:
            j["kind"] = "select_option";
            j["option"] = a.option;
            break;
        case Action::Kind::toggle: j["kind"] = "toggle"; break;
    }
    j["widget"] = a.widget;
    return j;
}

Action action_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    std::string widget = j.at("widget").get<std::string>();
    if (kind == "click") return Action::click(widget);
    if (kind == "type_text") return Action::type_text(widget, j.at("text").get<std::string>());
    if (kind == "select_option")
        return Action::select_option(widget, j.at("option").get<std::string>());
    if (kind == "toggle") return Action::toggle(widget);
    throw Error("InvalidAction", "unknown action kind '" + kind + "'");
}

std::string action_str(const Action& a) {
    switch (a.kind) {
        case Action::Kind::click: return "click(" + a.widget + ")";
        case Action::Kind::type_text: return "type_text(" + a.widget + ", \"" + a.text + "\")";
        case Action::Kind::select_option:
            return "select_option(" + a.widget + ", " + a.option + ")";
        case Action::Kind::toggle: return "toggle(" + a.widget + ")";
    }
    return "?";
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

json state_json(const GuiSnapshot& s) {
    json w = json::object();
    for (const auto& [id, st] : s.widgets) {
        w[id] = {{"kind", widget_kind_name(st.kind)},
                 {"value", value_to_json(st.value)},
                 {"enabled", st.enabled}};
    }
    return json{{"model", s.model_id}, {"screen", s.screen}, {"widgets", w}};
}

}  // namespace

json snapshot_to_json(const GuiSnapshot& s) {
    json j = state_json(s);
    j["clock_ms"] = s.clock_ms;
    return j;
}

GuiSnapshot snapshot_from_json(const json& j) {
    GuiSnapshot s;
    s.model_id = j.at("model").get<std::string>();
    s.screen = j.at("screen").get<std::string>();
    s.clock_ms = j.value("clock_ms", std::int64_t(0));
    for (const auto& [id, jw] : j.at("widgets").items()) {
        WidgetState st;
        st.id = id;
        auto k = widget_kind_from(jw.at("kind").get<std::string>());
        st.kind = k.value_or(WidgetKind::button);
        st.value = value_from_json(jw.at("value"));
        st.enabled = jw.at("enabled").get<bool>();
        s.widgets[id] = std::move(st);
    }
    return s;
}

std::string snapshot_digest(const GuiSnapshot& s) {
    return sha256_hex(state_json(s).dump());
}

}  // namespace aurakit::sim

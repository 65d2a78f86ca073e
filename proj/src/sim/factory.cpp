#include "aurakit/core/error.hpp"
#include "models.hpp"

namespace aurakit::sim {

WidgetSpec button(std::string id, std::string screen, bool enabled_hint) {
    (void)enabled_hint;
    WidgetSpec w;
    w.id = std::move(id);
    w.kind = WidgetKind::button;
    w.screen = std::move(screen);
    w.initial = model::Value(false);
    return w;
}

WidgetSpec numeric(std::string id, std::string screen, double min, double max, double init,
                   const char* unit, bool integral) {
    WidgetSpec w;
    w.id = std::move(id);
    w.kind = WidgetKind::numeric_field;
    w.screen = std::move(screen);
    w.min = min;
    w.max = max;
    w.integral = integral;
    if (unit) w.unit = unit;
    w.initial = integral ? model::Value(std::int64_t(init)) : model::Value(init);
    return w;
}

WidgetSpec dropdown(std::string id, std::string screen, std::vector<std::string> options,
                    std::string init) {
    WidgetSpec w;
    w.id = std::move(id);
    w.kind = WidgetKind::dropdown;
    w.screen = std::move(screen);
    w.options = std::move(options);
    w.initial = model::Value(std::move(init));
    return w;
}

WidgetSpec readout_text(std::string id, std::string screen, std::string init) {
    WidgetSpec w;
    w.id = std::move(id);
    w.kind = WidgetKind::readout;
    w.screen = std::move(screen);
    w.readout_type = model::ValueType::text;
    w.initial = model::Value(std::move(init));
    return w;
}

WidgetSpec readout_real(std::string id, std::string screen, double init) {
    WidgetSpec w;
    w.id = std::move(id);
    w.kind = WidgetKind::readout;
    w.screen = std::move(screen);
    w.readout_type = model::ValueType::real;
    w.initial = model::Value(init);
    return w;
}

WidgetSpec progress_bar(std::string id, std::string screen) {
    WidgetSpec w;
    w.id = std::move(id);
    w.kind = WidgetKind::progress;
    w.screen = std::move(screen);
    w.initial = model::Value(0.0);
    return w;
}

WidgetSpec preview(std::string id, std::string screen) {
    WidgetSpec w;
    w.id = std::move(id);
    w.kind = WidgetKind::preview;
    w.screen = std::move(screen);
    w.initial = model::Value(std::string(""));
    return w;
}

const std::set<std::string>& known_models() {
    static const std::set<std::string> models = {"uvvis", "sem-eds", "microct"};
    return models;
}

std::unique_ptr<Simulator> create_sim(const std::string& model, std::uint64_t seed) {
    if (model == "uvvis") return make_uvvis(seed);
    if (model == "sem-eds") return make_semeds(seed);
    if (model == "microct") return make_microct(seed);
    throw Error("UnknownModel", "no simulator model '" + model + "'");
}

InstrumentDescriptor descriptor_for(const std::string& model) {
    if (model == "uvvis") return uvvis_descriptor();
    if (model == "sem-eds") return semeds_descriptor();
    if (model == "microct") return microct_descriptor();
    throw Error("UnknownModel", "no simulator model '" + model + "'");
}

}  // namespace aurakit::sim

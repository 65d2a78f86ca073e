// Internal: concrete simulator model constructors.
#pragma once

#include <memory>

#include "aurakit/core/error.hpp"
#include "aurakit/sim/simulator.hpp"

namespace aurakit::sim {

std::unique_ptr<Simulator> make_uvvis(std::uint64_t seed);
std::unique_ptr<Simulator> make_semeds(std::uint64_t seed);
std::unique_ptr<Simulator> make_microct(std::uint64_t seed);

InstrumentDescriptor uvvis_descriptor();
InstrumentDescriptor semeds_descriptor();
InstrumentDescriptor microct_descriptor();

// descriptor construction helpers
WidgetSpec button(std::string id, std::string screen, bool enabled_hint = true);
WidgetSpec numeric(std::string id, std::string screen, double min, double max, double init,
                   const char* unit = nullptr, bool integral = false);
WidgetSpec dropdown(std::string id, std::string screen, std::vector<std::string> options,
                    std::string init);
WidgetSpec readout_text(std::string id, std::string screen, std::string init);
WidgetSpec readout_real(std::string id, std::string screen, double init);
WidgetSpec progress_bar(std::string id, std::string screen);
WidgetSpec preview(std::string id, std::string screen);

}  // namespace aurakit::sim

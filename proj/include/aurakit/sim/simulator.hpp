#pragma once

#include <memory>
#include <set>

#include "aurakit/core/rng.hpp"
#include "aurakit/sim/dataset.hpp"
#include "aurakit/sim/descriptor.hpp"
#include "aurakit/sim/snapshot.hpp"

namespace aurakit::sim {

// Deterministic simulated instrument control software. One instance is a
// single-threaded state machine over a simulated clock; (model, seed) fully
// determine every snapshot and exported dataset for a given action/advance
// sequence.
class Simulator {
public:
    virtual ~Simulator() = default;

    const InstrumentDescriptor& descriptor() const { return desc_; }
    const std::string& model_id() const { return desc_.model_id; }
    std::uint64_t seed() const { return seed_; }
    std::int64_t clock() const { return clock_ms_; }

    // Pure read; does not advance the clock.
    GuiSnapshot observe() const;

    // Validates the target (UnknownWidget, WidgetDisabled, KindMismatch,
    // ValueOutOfRange), applies the transition, then advances the clock by
    // the per-action cost.
    void apply_action(const Action& a);

    // Advances the clock, firing timed completions at their exact deadlines;
    // the state reached at a given clock does not depend on how the interval
    // was chopped.
    void advance(std::int64_t dt_ms);

    // Errors: NotReady, UnknownDataset.
    Dataset export_dataset(const std::string& dataset_id);

protected:
    Simulator(InstrumentDescriptor desc, std::uint64_t seed);

    // model hooks
    virtual void on_click(const std::string& id) = 0;
    virtual void on_value_set(const std::string& id) { (void)id; }
    // next pending deadline at or after the current clock, if any
    virtual std::optional<std::int64_t> next_deadline() const = 0;
    virtual void on_deadline(std::int64_t at_ms) = 0;
    virtual Dataset do_export(const std::string& id) = 0;
    // recompute continuously varying widgets (progress bars) from the clock
    virtual void refresh() {}

    // state helpers
    const model::Value& value_of(const std::string& id) const;
    double number_of(const std::string& id) const;
    std::string text_of(const std::string& id) const;
    void set_value(const std::string& id, model::Value v);
    void set_enabled(const std::string& id, bool enabled);
    void set_screen(const std::string& screen);
    const std::string& screen() const { return screen_; }

    StreamRng rng(std::string_view stream) const { return StreamRng(seed_, stream); }
    StreamRng rng(std::string_view stream, std::int64_t index) const {
        return StreamRng(seed_, std::string(stream) + "." + std::to_string(index));
    }

    nlohmann::json provenance(nlohmann::json params) const;

private:
    struct Slot {
        const WidgetSpec* spec;
        model::Value value;
        bool enabled = true;
    };

    Slot& slot(const std::string& id);
    const Slot& slot(const std::string& id) const;

    InstrumentDescriptor desc_;
    std::uint64_t seed_;
    std::int64_t clock_ms_ = 0;
    std::string screen_;
    std::map<std::string, Slot> slots_;
};

// Shipped model ids: {"uvvis", "sem-eds", "microct"}.
const std::set<std::string>& known_models();

// Errors: UnknownModel.
std::unique_ptr<Simulator> create_sim(const std::string& model, std::uint64_t seed);

InstrumentDescriptor descriptor_for(const std::string& model);

}  // namespace aurakit::sim

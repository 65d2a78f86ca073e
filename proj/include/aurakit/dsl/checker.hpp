#pragma once

#include "aurakit/dsl/diagnostic.hpp"
#include "aurakit/model/manifest.hpp"
#include "aurakit/sim/descriptor.hpp"

namespace aurakit::dsl {

// Static checks of a program against a simulator's widget schema: unknown
// widgets, action/widget kind mismatches, expression typing, use of unbound
// variables on any control-flow path, degenerate waits and loops. When the
// manifest parameter list is supplied, parameter refs are resolved and typed;
// without it they are treated as well-typed unknowns.
std::vector<Diagnostic> check_program(const model::Type1Program& program,
                                      const sim::InstrumentDescriptor& descriptor,
                                      const std::vector<model::ParamSpec>* params = nullptr);

}  // namespace aurakit::dsl

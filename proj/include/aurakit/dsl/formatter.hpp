#pragma once

#include <string>

#include "aurakit/model/program.hpp"

namespace aurakit::dsl {

// Canonical text: one step per line, 2-space block indent, spaces around
// binary operators, lines wrapped at 120 columns with a trailing backslash.
// parse(format(ast)) is structurally identical to ast (spans excluded).
std::string format_program(const model::Type1Program& program);

// Single-line rendering of an expression (used for messages and traces).
std::string format_expr(const model::ExprPtr& expr);

}  // namespace aurakit::dsl

#pragma once

#include <optional>

#include "aurakit/dsl/diagnostic.hpp"
#include "aurakit/model/program.hpp"

namespace aurakit::dsl {

struct ParseResult {
    std::optional<model::Type1Program> program;  // set iff no error diagnostics
    std::vector<Diagnostic> diagnostics;
};

ParseResult parse_program(const std::string& source);

}  // namespace aurakit::dsl

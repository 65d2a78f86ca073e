#pragma once

#include <string>
#include <vector>

#include "aurakit/model/program.hpp"

namespace aurakit::dsl {

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    model::SourceSpan span;
    std::string code;  // short identifier, e.g. "syntax", "unknown-widget"
    std::string message;
};

// "file:line:col: severity[code]: message"
std::string render_diagnostic(const Diagnostic& d, const std::string& file);

bool has_error(const std::vector<Diagnostic>& diags);

}  // namespace aurakit::dsl

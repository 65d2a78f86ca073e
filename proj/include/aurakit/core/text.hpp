#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace aurakit {

// Shortest round-trip decimal form, locale-independent. Integral values
// render without a trailing ".0" ("15", not "15.0"); canonical files and
// digests depend on this being stable.
std::string fmt_double(double v);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_lines(std::string_view s);

// CRLF/CR -> LF
std::string normalize_newlines(std::string_view s);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view content);

}  // namespace aurakit

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace seiscontrol {

/// Splits a row on commas, or on runs of whitespace when no comma is
/// present. Cells are trimmed.
std::vector<std::string> split_delimited(std::string_view line);

/// Strict decimal parse; throws ConfigError naming `lineno` on failure.
double parse_double(std::string_view text, std::size_t lineno);
long long parse_int(std::string_view text, std::size_t lineno);

}  // namespace seiscontrol

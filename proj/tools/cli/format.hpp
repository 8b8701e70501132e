#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace auction::cli {

// Shortest round-trip decimal for a double.
std::string fmt(double v);
std::string fmt(const std::optional<double>& v);

std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::vector<std::string> split(std::string_view text, char sep);

// "200bp", "2%", "0.02x" or a bare number of basis points -> log-price units.
double parse_log_distance(std::string_view text);
// "30s", "500ms", "250us" or bare seconds -> microseconds.
std::int64_t parse_duration_us(std::string_view text);
double parse_double(std::string_view text, std::string_view what);

}  // namespace auction::cli

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lrtbench {

/// Shortest-safe decimal form: 17 significant digits, round-trips any double.
std::string format_double(double value);
std::string format_list(const std::vector<double>& values);

double parse_double(std::string_view text);
long long parse_int(std::string_view text);
std::vector<double> parse_list(std::string_view text);

std::vector<std::string> split(std::string_view text, char separator);
std::string_view trim(std::string_view text);

}  // namespace lrtbench

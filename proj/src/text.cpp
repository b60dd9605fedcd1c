#include "lrtbench/text.hpp"

#include <cerrno>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "lrtbench/error.hpp"

namespace lrtbench {

std::string format_double(double value) {
  char buffer[40];
  const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(n));
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

double parse_double(std::string_view text) {
  const std::string owned(trim(text));
  require(!owned.empty(), ErrorKind::schema, "empty numeric field");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(owned.c_str(), &end);
  // ERANGE also flags exact subnormals; only overflow is an error.
  const bool overflow = errno == ERANGE && std::isinf(value);
  require(end == owned.c_str() + owned.size() && !overflow, ErrorKind::schema,
          "not a number: '" + owned + "'");
  return value;
}

long long parse_int(std::string_view text) {
  const std::string_view t = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  require(ec == std::errc{} && ptr == t.data() + t.size() && !t.empty(), ErrorKind::schema,
          "not an integer: '" + std::string(t) + "'");
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> values;
  for (const auto& field : split(text, ',')) values.push_back(parse_double(field));
  return values;
}

std::vector<std::string> split(std::string_view text, char separator) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(separator, start);
    if (pos == std::string_view::npos) {
      fields.emplace_back(text.substr(start));
      return fields;
    }
    fields.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace lrtbench

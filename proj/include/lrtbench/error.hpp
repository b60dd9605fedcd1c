#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrtbench {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  unknown_family,
  family_mismatch,
  non_finite,
  degenerate,
  missing_data,
  digest_mismatch,
  schema,
  io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::unknown_family: return "unknown_family";
    case ErrorKind::family_mismatch: return "family_mismatch";
    case ErrorKind::non_finite: return "non_finite";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::missing_data: return "missing_data";
    case ErrorKind::digest_mismatch: return "digest_mismatch";
    case ErrorKind::schema: return "schema";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

/// Single exception type for the library. `kind()` is a stable machine-readable
/// tag; the CLI prints it verbatim on failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace lrtbench

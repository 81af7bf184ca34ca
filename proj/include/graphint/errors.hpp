#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphint {

/// Malformed graph or path-point input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Two independent routes to the same answer disagreed. Always an implementation bug.
class OracleMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured size guard (vertex bound, basis bound, path-space length) was exceeded.
class BoundExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace graphint

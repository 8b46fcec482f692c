#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anisodnl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad exponent, negative input,
/// parameter outside its admissible range, mismatched grids, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Configuration text could not be parsed. Carries the 1-based line number
/// (0 when the problem is not tied to a single line) and the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& what)
      : Error(format(line, field, what)), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(std::size_t line, const std::string& field, const std::string& what) {
    std::string out = "config";
    if (line > 0) out += ":" + std::to_string(line);
    if (!field.empty()) out += " [" + field + "]";
    return out + ": " + what;
  }

  std::size_t line_;
  std::string field_;
};

}  // namespace anisodnl

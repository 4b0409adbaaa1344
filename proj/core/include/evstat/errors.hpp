#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evstat {

/// Configuration text could not be parsed, or a parameter violates a
/// family invariant. Carries a 1-based line/column of the offending token
/// when the source was textual (0 when not applicable).
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(msg), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A size guard would be exceeded (e.g. a branching tree too large to hold).
class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Too few conditioning events to estimate a conditional frequency.
class insufficient_data_error : public std::runtime_error {
public:
  insufficient_data_error(const std::string& msg, std::uint64_t events, std::uint64_t required)
      : std::runtime_error(msg), events_(events), required_(required) {}

  std::uint64_t events() const noexcept { return events_; }
  std::uint64_t required() const noexcept { return required_; }

private:
  std::uint64_t events_;
  std::uint64_t required_;
};

}  // namespace evstat

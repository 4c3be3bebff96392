#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace turan {

/// Raised when a search or enumeration hits its configured budget before
/// finishing. `partial` carries whatever certified count was reached.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t partial)
      : std::runtime_error(what), partial_(partial) {}
  std::uint64_t partial() const { return partial_; }

 private:
  std::uint64_t partial_;
};

/// A constructed object failed one of its certificate checks.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; the message includes the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace turan

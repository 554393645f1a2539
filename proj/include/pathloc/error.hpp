#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathloc {

// Bad input: malformed files, inconsistent shapes, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Runtime or numeric failure on otherwise valid input (e.g. every decoder
// state unreachable, disconnected clusters in hop mode).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input exceeds a hard resource budget (enumeration oracles, variance guards).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pathloc

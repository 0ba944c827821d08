#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coronalab {

/// Malformed input file. Carries the 1-based line where parsing failed (0 if unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input that parses but violates a domain invariant (nonpositive weight, bad range, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its precondition (incomparable intervals, zero mass, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace coronalab

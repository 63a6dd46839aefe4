#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chanrank {

// Base for every error raised by the library. The CLI maps these to exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input value lies outside the domain of the function (non-finite SNR,
// occupancy outside [0, 1], negative energy, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A curve, CES, simulator or grid parameter violates its invariants.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// A reference ranking does not agree with the observation list it refers to.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace chanrank

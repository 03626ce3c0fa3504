#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asymrep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Presentation DSL syntax or semantic error, with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A precondition on an argument value was violated (m < 1, r < 0, N < dim, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix would exceed the configured entry limit.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input, singular blocks, or a search that found no admissible value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace asymrep

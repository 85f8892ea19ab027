#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stabgap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count or syndrome length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The generator has a degenerate zero mode, so the model/bath pair is not primitive.
class NonPrimitiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace stabgap

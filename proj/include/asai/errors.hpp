#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asai {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad numeric parameter, e.g. a "q" that is not a power of the characteristic.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Two field elements (or a field and a target) whose degrees are not compatible.
class IncompatibleFieldsError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (field degree, group order, extension multiplier) was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed group-law text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A group law that is well formed but violates an axiom or the triangular shape.
/// `coordinate()` is 1-based, 0 when the failure is not tied to one coordinate.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, std::size_t coordinate = 0)
      : Error(message), coordinate_(coordinate) {}

  std::size_t coordinate() const noexcept { return coordinate_; }

 private:
  std::size_t coordinate_;
};

/// A consistency check that can only fail through a bug in this library.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace asai

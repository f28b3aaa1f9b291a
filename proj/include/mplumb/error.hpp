#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mplumb {

enum class ErrorKind {
  // input errors (CLI exit code 1)
  ParseError,
  ValidationError,
  IoError,
  // domain errors (CLI exit code 2)
  InvalidParameter,
  NotSeparable,
  NotUnit,
  NotInZEpsImage,
  UnsupportedModel,
  MissingExtension,
  NotOrientable,
  NotTransverse,
  NotTree,
  NonRationalPoint,
  InconsistentIncidence,
  TooManyHyperplanes,
  NotNowhereDense,
  NotNormalCrossing,
  Obstruction,
  UnknownCatalog,
};

std::string_view to_string(ErrorKind kind);

/// True for the kinds that describe malformed input rather than a
/// mathematical precondition failure.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mplumb

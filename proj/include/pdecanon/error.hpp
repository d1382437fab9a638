#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pdecanon {

enum class ErrorKind {
  DivisionByZero,
  PoleAtPoint,
  MissingParam,
  InexactDivision,
  UnsupportedExpression,
  NonPolynomialInU,
  SyntaxError,
  UndeclaredIdentifier,
  InvalidDeclaration,
  NonAffineRightSide,
  DuplicateDefinition,
  SingularTransform,
  DimensionMismatch,
  ZeroScale,
  NoSolution,
  InvalidTarget,
  VarSetMismatch,
  SearchBudgetExceeded,
  UnresolvedNonlinearSystem,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is the stable, testable part;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position and what the parser wanted.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected,
              const std::string& found);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

}  // namespace pdecanon

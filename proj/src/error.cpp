#include "pdecanon/error.hpp"

namespace pdecanon {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::MissingParam: return "MissingParam";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::UnsupportedExpression: return "UnsupportedExpression";
    case ErrorKind::NonPolynomialInU: return "NonPolynomialInU";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredIdentifier: return "UndeclaredIdentifier";
    case ErrorKind::InvalidDeclaration: return "InvalidDeclaration";
    case ErrorKind::NonAffineRightSide: return "NonAffineRightSide";
    case ErrorKind::DuplicateDefinition: return "DuplicateDefinition";
    case ErrorKind::SingularTransform: return "SingularTransform";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::VarSetMismatch: return "VarSetMismatch";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::UnresolvedNonlinearSystem: return "UnresolvedNonlinearSystem";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::string expected,
                         const std::string& found)
    : Error(ErrorKind::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) +
                ": expected " + expected + ", found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace pdecanon

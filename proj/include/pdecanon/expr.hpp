#pragma once

#include <string>
#include <vector>

#include "pdecanon/diffpoly.hpp"

namespace pdecanon {

/// Unexpanded expression as written, e.g. beta*(u^2)_xx. Derivatives of
/// composite subexpressions are kept as nodes until expansion.
struct Expr {
  enum class Kind { Number, Param, Var, Unknown, Sum, Product, Quotient, Negate, Power, Derivative };

  Kind kind = Kind::Number;
  Rational number;             // Number
  std::string name;            // Param, Var
  DerivKey key;                // Unknown, Derivative
  long exponent = 0;           // Power
  std::vector<Expr> children;  // operands

  static Expr num(const Rational& value);
  static Expr param(std::string name);
  static Expr var(std::string name);
  static Expr u(DerivKey key);
  static Expr sum(Expr a, Expr b);
  static Expr product(Expr a, Expr b);
  static Expr quotient(Expr a, Expr b);
  static Expr negate(Expr a);
  static Expr power(Expr base, long exponent);
  static Expr derivative(Expr base, DerivKey key);
};

/// Expands every derivative operator onto u (linearity, product and power
/// rules), then applies D^key to the result. Throws
/// Error(UnsupportedExpression) for division by a u-dependent expression,
/// negative powers of u, or independent variables used as coefficients.
DiffPoly expand_total_derivative(const Expr& e, const DerivKey& key, const VarSet& vars);

/// expand_total_derivative with the zero key.
DiffPoly to_diffpoly(const Expr& e, const VarSet& vars);

/// Evaluates a u-free expression, treating parameters and variables alike as
/// symbols. Throws Error(UnsupportedExpression) if u occurs.
RatFun to_ratfun(const Expr& e);

}  // namespace pdecanon

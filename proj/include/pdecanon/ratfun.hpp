#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "pdecanon/mpoly.hpp"

namespace pdecanon {

/// Element of Q(params): a quotient of polynomials in the declared parameters.
///
/// Canonical form: numerator and denominator are coprime and the denominator
/// is monic under grlex, so equal elements have identical representations.
/// Equality itself is decided by cross-multiplication and does not rely on
/// that reduction.
class RatFun {
 public:
  RatFun() : den_(1) {}
  RatFun(const Rational& constant) : num_(constant), den_(1) {}  // NOLINT
  RatFun(long constant) : RatFun(Rational(constant)) {}           // NOLINT
  RatFun(const MPoly& polynomial) : num_(polynomial), den_(1) {}  // NOLINT
  /// Throws Error(DivisionByZero) when `denominator` is the zero polynomial.
  RatFun(const MPoly& numerator, const MPoly& denominator);

  static RatFun param(const std::string& name) { return RatFun(MPoly::symbol(name)); }

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant element; throws Error(InvalidTarget) otherwise.
  Rational constant_value() const;
  /// Numerator and denominator are single terms (e.g. -3/2*delta/beta).
  bool is_monomial() const noexcept { return num_.size() <= 1 && den_.size() == 1; }
  std::set<std::string> params() const;

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& other);
  RatFun& operator-=(const RatFun& other);
  RatFun& operator*=(const RatFun& other);
  /// Throws Error(DivisionByZero) when `other` is zero.
  RatFun& operator/=(const RatFun& other);
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  friend bool operator==(const RatFun& a, const RatFun& b);

  RatFun pow(long exponent) const;

  /// Exact value at a point. Throws Error(MissingParam) or Error(PoleAtPoint).
  Rational evaluate(const std::map<std::string, Rational>& point) const;
  /// Simultaneous substitution of parameters; unmapped ones are kept.
  /// Throws Error(PoleAtPoint) if the denominator becomes zero.
  RatFun substitute(const std::map<std::string, RatFun>& values) const;

  std::string to_string() const;

 private:
  void canonicalize();
  void make_den_monic();
  MPoly num_;
  MPoly den_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Field operation by name; division by zero throws Error(DivisionByZero).
RatFun ratfun_arith(ArithOp op, const RatFun& a, const RatFun& b);

/// g with g*g == f when f is a square in Q(params); std::nullopt otherwise.
std::optional<RatFun> sqrt(const RatFun& f);

}  // namespace pdecanon

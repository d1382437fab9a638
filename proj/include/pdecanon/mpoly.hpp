#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdecanon/rational.hpp"

namespace pdecanon {

/// Power product of named symbols, e.g. alpha^2*delta. Factors are sorted by
/// name and carry positive exponents; the empty product is 1.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial symbol(const std::string& name, unsigned exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  unsigned degree() const noexcept;
  unsigned exponent(const std::string& name) const noexcept;

  /// Quotient when `divisor` divides this monomial.
  std::optional<Monomial> divide(const Monomial& divisor) const;
  /// Same monomial with `name` removed.
  Monomial without(const std::string& name) const;
  /// Componentwise minimum of exponents.
  static Monomial gcd(const Monomial& a, const Monomial& b);
  /// Square root when every exponent is even.
  std::optional<Monomial> sqrt() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic comparison; names are ordered alphabetically and a
/// larger exponent on an earlier name ranks higher. Returns <0, 0 or >0.
int compare_grlex(const Monomial& a, const Monomial& b) noexcept;

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return compare_grlex(a, b) < 0;
  }
};

/// Sparse multivariate polynomial with rational coefficients. Terms are kept
/// in ascending grlex order with no zero coefficients, so structural equality
/// is polynomial equality.
class MPoly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  MPoly() = default;
  MPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  MPoly(long constant) : MPoly(Rational(constant)) {}  // NOLINT
  MPoly(const Monomial& monomial, const Rational& coefficient);
  static MPoly symbol(const std::string& name);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  std::size_t size() const noexcept { return terms_.size(); }

  std::set<std::string> symbols() const;
  bool contains(const std::string& name) const;
  unsigned total_degree() const noexcept;
  unsigned min_total_degree() const noexcept;
  unsigned degree_in(const std::string& name) const noexcept;
  /// Coefficients as a univariate polynomial in `name`; index = power.
  std::vector<MPoly> coefficients_in(const std::string& name) const;
  /// Greatest monomial dividing every term.
  Monomial monomial_content() const;

  MPoly derivative(const std::string& name) const;
  /// Full evaluation. Throws Error(MissingParam) if a symbol is unassigned.
  Rational evaluate(const std::map<std::string, Rational>& point) const;
  /// Simultaneous substitution of symbols by polynomials; unmapped symbols stay.
  MPoly substitute(const std::map<std::string, MPoly>& values) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(const MPoly& other);
  MPoly& operator*=(const Rational& factor);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& b) { return a *= b; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(unsigned exponent) const;
  /// Scaled so the leading coefficient is 1 (zero stays zero).
  MPoly monic() const;

  /// Terms in descending grlex order, e.g. "1/4*alpha^2 - 1".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// a / b when b divides a exactly; throws Error(InexactDivision) otherwise.
MPoly exact_divide(const MPoly& a, const MPoly& b);

/// a / b when b divides a exactly, std::nullopt otherwise. b must be nonzero.
std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b);

/// Monic greatest common divisor over Q (gcd(0, 0) = 0).
MPoly gcd(const MPoly& a, const MPoly& b);

/// Root r with r*r == p and positive leading coefficient, if p is a square.
std::optional<MPoly> sqrt(const MPoly& p);

/// Primitive integer multiple with positive leading coefficient, the form used
/// when a polynomial is reported as a condition.
MPoly primitive_integer_form(const MPoly& p);

}  // namespace pdecanon

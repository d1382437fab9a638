#include "pdecanon/rational.hpp"

#include "pdecanon/error.hpp"

namespace pdecanon {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view v) {
    if (!v.empty() && (v.front() == '-' || v.front() == '+')) v.remove_prefix(1);
    if (v.empty()) return false;
    for (char c : v)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw Error(ErrorKind::SyntaxError, "not a rational literal: '" + s + "'");
  if (num.front() == '+') num.erase(0, 1);
  Rational r;
  r.get_num() = mpz_class(num, 10);
  r.get_den() = mpz_class(den, 10);
  if (r.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class& n = value.get_num();
  const mpz_class& d = value.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace pdecanon

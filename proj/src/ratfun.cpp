#include "pdecanon/ratfun.hpp"

#include "pdecanon/error.hpp"

namespace pdecanon {

namespace {

/// Evaluates a polynomial with every symbol replaced by a field element.
RatFun evaluate_poly(const MPoly& p, const std::map<std::string, RatFun>& values) {
  RatFun sum;
  for (const auto& [m, c] : p.terms()) {
    RatFun term(c);
    MPoly kept(Rational(1));
    for (const auto& [name, e] : m.factors()) {
      auto it = values.find(name);
      if (it == values.end()) {
        kept *= MPoly(Monomial::symbol(name, e), Rational(1));
      } else {
        term *= it->second.pow(static_cast<long>(e));
      }
    }
    sum += term * RatFun(kept);
  }
  return sum;
}

}  // namespace

RatFun::RatFun(const MPoly& numerator, const MPoly& denominator)
    : num_(numerator), den_(denominator) {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  canonicalize();
}

void RatFun::canonicalize() {
  if (num_.is_zero()) {
    den_ = MPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_divide(num_, g);
      den_ = exact_divide(den_, g);
    }
  }
  make_den_monic();
}

void RatFun::make_den_monic() {
  const Rational lead = den_.leading_coefficient();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

bool RatFun::is_one() const {
  return den_.is_constant() && num_.is_constant() && num_.constant_value() == 1;
}

Rational RatFun::constant_value() const {
  if (!is_constant()) throw Error(ErrorKind::InvalidTarget, to_string() + " is not a constant");
  return Rational(num_.constant_value() / den_.constant_value());
}

std::set<std::string> RatFun::params() const {
  auto out = num_.symbols();
  for (const auto& s : den_.symbols()) out.insert(s);
  return out;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun& RatFun::operator+=(const RatFun& other) {
  if (den_ == other.den_) {
    num_ += other.num_;
    canonicalize();
    return *this;
  }
  const MPoly g = gcd(den_, other.den_);
  if (g.is_constant()) {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ *= other.den_;
    if (num_.is_zero()) den_ = MPoly(1);
    make_den_monic();
    return *this;
  }
  const MPoly b1 = exact_divide(den_, g);
  const MPoly d1 = exact_divide(other.den_, g);
  MPoly t = num_ * d1 + other.num_ * b1;
  if (t.is_zero()) return *this = RatFun();
  const MPoly g2 = gcd(t, g);
  num_ = exact_divide(t, g2);
  den_ = b1 * d1 * exact_divide(g, g2);
  make_den_monic();
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& other) { return *this += -other; }

RatFun& RatFun::operator*=(const RatFun& other) {
  if (is_zero() || other.is_zero()) return *this = RatFun();
  const MPoly g1 = gcd(num_, other.den_);
  const MPoly g2 = gcd(other.num_, den_);
  num_ = exact_divide(num_, g1) * exact_divide(other.num_, g2);
  den_ = exact_divide(den_, g2) * exact_divide(other.den_, g1);
  make_den_monic();
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& other) {
  if (other.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero element");
  RatFun inverse;
  inverse.num_ = other.den_;
  inverse.den_ = other.num_;
  inverse.make_den_monic();
  return *this *= inverse;
}

bool operator==(const RatFun& a, const RatFun& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFun RatFun::pow(long exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
    RatFun r;
    r.num_ = den_.pow(static_cast<unsigned>(-exponent));
    r.den_ = num_.pow(static_cast<unsigned>(-exponent));
    r.canonicalize();
    return r;
  }
  RatFun r;
  r.num_ = num_.pow(static_cast<unsigned>(exponent));
  r.den_ = den_.pow(static_cast<unsigned>(exponent));
  r.canonicalize();
  return r;
}

Rational RatFun::evaluate(const std::map<std::string, Rational>& point) const {
  Rational d = den_.evaluate(point);
  Rational n = num_.evaluate(point);
  if (sgn(d) == 0) throw Error(ErrorKind::PoleAtPoint, "denominator " + den_.to_string() + " vanishes");
  Rational r = n / d;
  r.canonicalize();
  return r;
}

RatFun RatFun::substitute(const std::map<std::string, RatFun>& values) const {
  RatFun d = evaluate_poly(den_, values);
  if (d.is_zero()) throw Error(ErrorKind::PoleAtPoint, "denominator " + den_.to_string() + " vanishes");
  return evaluate_poly(num_, values) / d;
}

std::string RatFun::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool bare = den_.is_monomial() && den_.leading_monomial().factors().size() == 1;
  return n + "/" + (bare ? d : "(" + d + ")");
}

RatFun ratfun_arith(ArithOp op, const RatFun& a, const RatFun& b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return {};
}

std::optional<RatFun> sqrt(const RatFun& f) {
  auto n = sqrt(f.num());
  if (!n) return std::nullopt;
  auto d = sqrt(f.den());
  if (!d) return std::nullopt;
  return RatFun(*n, *d);
}

}  // namespace pdecanon

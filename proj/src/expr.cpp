#include "pdecanon/expr.hpp"

#include "pdecanon/error.hpp"

namespace pdecanon {

Expr Expr::num(const Rational& value) {
  Expr e;
  e.kind = Kind::Number;
  e.number = value;
  return e;
}

Expr Expr::param(std::string name) {
  Expr e;
  e.kind = Kind::Param;
  e.name = std::move(name);
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::u(DerivKey key) {
  Expr e;
  e.kind = Kind::Unknown;
  e.key = std::move(key);
  return e;
}

namespace {

Expr binary(Expr::Kind kind, Expr a, Expr b) {
  Expr e;
  e.kind = kind;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

}  // namespace

Expr Expr::sum(Expr a, Expr b) { return binary(Kind::Sum, std::move(a), std::move(b)); }
Expr Expr::product(Expr a, Expr b) { return binary(Kind::Product, std::move(a), std::move(b)); }
Expr Expr::quotient(Expr a, Expr b) { return binary(Kind::Quotient, std::move(a), std::move(b)); }

Expr Expr::negate(Expr a) {
  Expr e;
  e.kind = Kind::Negate;
  e.children.push_back(std::move(a));
  return e;
}

Expr Expr::power(Expr base, long exponent) {
  Expr e;
  e.kind = Kind::Power;
  e.exponent = exponent;
  e.children.push_back(std::move(base));
  return e;
}

Expr Expr::derivative(Expr base, DerivKey key) {
  Expr e;
  e.kind = Kind::Derivative;
  e.key = std::move(key);
  e.children.push_back(std::move(base));
  return e;
}

DiffPoly to_diffpoly(const Expr& e, const VarSet& vars) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return DiffPoly::constant(vars, RatFun(e.number));
    case Expr::Kind::Param:
      return DiffPoly::constant(vars, RatFun::param(e.name));
    case Expr::Kind::Var:
      throw Error(ErrorKind::UnsupportedExpression,
                  "independent variable '" + e.name + "' cannot appear as a coefficient");
    case Expr::Kind::Unknown:
      return DiffPoly::derivative_of_u(vars, e.key);
    case Expr::Kind::Sum:
      return to_diffpoly(e.children[0], vars) + to_diffpoly(e.children[1], vars);
    case Expr::Kind::Product:
      return to_diffpoly(e.children[0], vars) * to_diffpoly(e.children[1], vars);
    case Expr::Kind::Negate:
      return -to_diffpoly(e.children[0], vars);
    case Expr::Kind::Quotient: {
      auto den = to_diffpoly(e.children[1], vars).as_constant();
      if (!den) throw Error(ErrorKind::UnsupportedExpression, "division by an expression in u");
      if (den->is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
      return to_diffpoly(e.children[0], vars) * (RatFun(1) / *den);
    }
    case Expr::Kind::Power: {
      DiffPoly base = to_diffpoly(e.children[0], vars);
      if (e.exponent >= 0) return base.pow(static_cast<unsigned>(e.exponent));
      auto c = base.as_constant();
      if (!c) throw Error(ErrorKind::UnsupportedExpression, "negative power of an expression in u");
      return DiffPoly::constant(vars, c->pow(e.exponent));
    }
    case Expr::Kind::Derivative:
      return to_diffpoly(e.children[0], vars).total_derivative(e.key);
  }
  throw Error(ErrorKind::UnsupportedExpression, "unknown expression node");
}

DiffPoly expand_total_derivative(const Expr& e, const DerivKey& key, const VarSet& vars) {
  return to_diffpoly(e, vars).total_derivative(key);
}

RatFun to_ratfun(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return RatFun(e.number);
    case Expr::Kind::Param:
    case Expr::Kind::Var: return RatFun::param(e.name);
    case Expr::Kind::Unknown:
    case Expr::Kind::Derivative:
      throw Error(ErrorKind::UnsupportedExpression, "u cannot appear here");
    case Expr::Kind::Sum: return to_ratfun(e.children[0]) + to_ratfun(e.children[1]);
    case Expr::Kind::Product: return to_ratfun(e.children[0]) * to_ratfun(e.children[1]);
    case Expr::Kind::Negate: return -to_ratfun(e.children[0]);
    case Expr::Kind::Quotient: return to_ratfun(e.children[0]) / to_ratfun(e.children[1]);
    case Expr::Kind::Power: return to_ratfun(e.children[0]).pow(e.exponent);
  }
  throw Error(ErrorKind::UnsupportedExpression, "unknown expression node");
}

}  // namespace pdecanon

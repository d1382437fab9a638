#include "pdecanon/transform.hpp"

#include <algorithm>
#include <map>

#include "pdecanon/error.hpp"

namespace pdecanon {

AffineTransform AffineTransform::identity(const VarSet& vars) {
  return {vars, vars, identity_matrix(vars.size()), std::vector<RatFun>(vars.size())};
}

void AffineTransform::validate() const {
  const std::size_t n = source.size();
  if (target.size() != n || matrix.size() != n || offset.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "transform shape does not match its variables");
  for (const auto& row : matrix)
    if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "transform matrix is not square");
}

// -------------------------------------------------------- DegeneracyReport

bool DegeneracyReport::contains(const MPoly& p) const {
  return std::find(conditions.begin(), conditions.end(), primitive_integer_form(p)) != conditions.end();
}

void DegeneracyReport::add(const MPoly& p) {
  if (p.is_constant()) return;
  const Monomial content = p.monomial_content();
  for (const auto& [name, e] : content.factors()) {
    MPoly single = MPoly::symbol(name);
    if (!contains(single)) conditions.push_back(single);
  }
  MPoly rest = primitive_integer_form(exact_divide(p, MPoly(content, Rational(1))));
  if (!rest.is_constant() && !contains(rest)) conditions.push_back(rest);
}

void DegeneracyReport::merge(const DegeneracyReport& other) {
  for (const auto& c : other.conditions) add(c);
}

// ------------------------------------------------------------ matrix utils

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<RatFun>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = RatFun(1);
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  Matrix out(n, std::vector<RatFun>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (!a[i][l].is_zero() && !b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
  return out;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return a;
  Matrix out(a[0].size(), std::vector<RatFun>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

RatFun determinant(Matrix a) {
  const std::size_t n = a.size();
  RatFun det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return RatFun();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      RatFun f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix work = a;
  Matrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw Error(ErrorKind::SingularTransform, "matrix is singular (det = 0)");
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    RatFun scale = RatFun(1) / work[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      work[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r][col].is_zero()) continue;
      RatFun f = work[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        work[r][c] -= f * work[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

// ----------------------------------------------------------------- pullback

namespace {

/// Linear differential operator with constant coefficients over the target
/// variables, as a polynomial in the commuting symbols d/d new_j. Coefficients
/// are numerators over a denominator tracked by the caller.
using Operator = std::map<DerivKey, MPoly>;
using PolyTerms = std::map<DiffMonomial, MPoly>;

Operator multiply(const Operator& a, const Operator& b) {
  Operator out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      DerivKey k = ka;
      for (std::size_t i = 0; i < k.orders.size(); ++i) k.orders[i] += kb.orders[i];
      MPoly& slot = out[k];
      slot += ca * cb;
      if (slot.is_zero()) out.erase(k);
    }
  return out;
}

PolyTerms multiply(const PolyTerms& a, const PolyTerms& b) {
  PolyTerms out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      const DiffMonomial m = ma * mb;
      MPoly& slot = out[m];
      slot += ca * cb;
      if (slot.is_zero()) out.erase(m);
    }
  return out;
}

MPoly lcm(const MPoly& a, const MPoly& b) { return exact_divide(a * b, gcd(a, b)).monic(); }

void require_nonsingular(const AffineTransform& t) {
  RatFun det = determinant(t.matrix);
  if (det.is_zero())
    throw Error(ErrorKind::SingularTransform,
                "transform to (" + t.target.to_string() + ") has det = 0");
}

}  // namespace

DiffPoly pullback(const DiffPoly& p, const AffineTransform& t) {
  t.validate();
  if (!(p.vars() == t.source))
    throw Error(ErrorKind::DimensionMismatch, "equation is over (" + p.vars().to_string() +
                                                  "), transform expects (" +
                                                  t.source.to_string() + ")");
  require_nonsingular(t);
  const std::size_t n = t.source.size();

  // Matrix entries share the denominator d, so each derivative of total
  // order w picks up 1/d^w.
  MPoly d(1);
  for (const auto& row : t.matrix)
    for (const auto& e : row) d = lcm(d, e.den());
  std::vector<Operator> old_partials(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RatFun& e = t.matrix[j][i];
      if (!e.is_zero()) old_partials[i][DerivKey::of(n, {j})] = e.num() * exact_divide(d, e.den());
    }

  std::map<DerivKey, PolyTerms> expanded;
  auto expand_key = [&](const DerivKey& key) -> const PolyTerms& {
    auto it = expanded.find(key);
    if (it != expanded.end()) return it->second;
    Operator op{{DerivKey::zero(n), MPoly(1)}};
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < key.orders[i]; ++k) op = multiply(op, old_partials[i]);
    PolyTerms rewritten;
    for (const auto& [k, c] : op) rewritten.emplace(DiffMonomial::of(k), c);
    return expanded.emplace(key, std::move(rewritten)).first->second;
  };

  MPoly common(1);
  for (const auto& [m, c] : p.terms()) common = lcm(common, c.den());
  PolyTerms numerators;
  for (const auto& [m, c] : p.terms()) {
    PolyTerms term{{DiffMonomial(), c.num() * exact_divide(common, c.den())}};
    for (const auto& [key, e] : m.factors())
      for (unsigned k = 0; k < e; ++k) term = multiply(term, expand_key(key));
    for (auto& [mt, ct] : term) {
      MPoly& slot = numerators[mt];
      slot += ct;
      if (slot.is_zero()) numerators.erase(mt);
    }
  }
  DiffPoly out(t.target);
  for (auto& [m, num] : numerators) {
    unsigned power = m.weight();
    while (power > 0 && !d.is_constant()) {
      auto q = try_divide(num, d);
      if (!q) break;
      num = std::move(*q);
      --power;
    }
    out.add_term(m, RatFun(num, common * d.pow(power)));
  }
  return out;
}

AffineTransform invert_transform(const AffineTransform& t) {
  t.validate();
  Matrix inv;
  try {
    inv = inverse(t.matrix);
  } catch (const Error&) {
    throw Error(ErrorKind::SingularTransform,
                "transform to (" + t.target.to_string() + ") has det = 0");
  }
  const std::size_t n = inv.size();
  std::vector<RatFun> offset(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) offset[i] -= inv[i][j] * t.offset[j];
  return {t.target, t.source, std::move(inv), std::move(offset)};
}

AffineTransform compose(const AffineTransform& second, const AffineTransform& first) {
  first.validate();
  second.validate();
  if (!(first.target == second.source))
    throw Error(ErrorKind::DimensionMismatch, "cannot compose: (" + first.target.to_string() +
                                                  ") vs (" + second.source.to_string() + ")");
  const std::size_t n = first.source.size();
  std::vector<RatFun> offset = second.offset;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) offset[i] += second.matrix[i][j] * first.offset[j];
  return {first.source, second.target, multiply(second.matrix, first.matrix), std::move(offset)};
}

DegeneracyReport validity_conditions(const AffineTransform& t) {
  t.validate();
  DegeneracyReport report;
  for (const auto& row : t.matrix)
    for (const auto& entry : row) report.add(entry.den());
  for (const auto& entry : t.offset) report.add(entry.den());
  RatFun det = determinant(t.matrix);
  if (!det.is_zero()) report.add(det.num());
  return report;
}

}  // namespace pdecanon

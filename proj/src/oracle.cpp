#include "pdecanon/oracle.hpp"

#include <cstdlib>

#include "pdecanon/error.hpp"
#include "pdecanon/parser.hpp"

namespace pdecanon {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix invert(RationalMatrix a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorKind::SingularTransform, "transform is singular at these parameters");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = 1 / a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

long nonzero_digit(std::mt19937_64& rng) {
  int v = uniform(rng, 1, 18);
  return v <= 9 ? -v : v - 9;
}

RatFun random_coefficient(std::mt19937_64& rng, const std::vector<std::string>& params) {
  RatFun c(random_rational(rng));
  if (!params.empty() && uniform(rng, 0, 2) == 0)
    c *= RatFun::param(params[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(params.size()) - 1))])
             .pow(uniform(rng, 1, 2));
  return c;
}

}  // namespace

Residual residual_eval(const DiffPoly& p, const TestFunction& f, const std::vector<Rational>& point,
                       const std::map<std::string, Rational>& params) {
  if (!(p.vars() == f.vars) || point.size() != f.vars.size())
    throw Error(ErrorKind::DimensionMismatch, "equation, test function and point disagree on variables");
  std::map<std::string, Rational> at;
  for (std::size_t i = 0; i < point.size(); ++i) at[f.vars[i]] = point[i];

  Residual out{Rational(0), {}};
  std::map<DerivKey, Rational> values;
  auto value_of = [&](const DerivKey& key) -> const Rational& {
    auto it = values.find(key);
    if (it != values.end()) return it->second;
    MPoly d = f.poly;
    for (std::size_t i = 0; i < key.orders.size(); ++i)
      for (unsigned k = 0; k < key.orders[i]; ++k) d = d.derivative(f.vars[i]);
    if (d.is_zero())
      out.warnings.push_back("DegenerateTestFunction: " + format_key(key, f.vars, Notation::Subscript) +
                             " vanishes identically");
    return values.emplace(key, d.evaluate(at)).first->second;
  };
  for (const auto& [m, c] : p.terms()) {
    Rational term = c.evaluate(params);
    for (const auto& [key, e] : m.factors()) {
      Rational v = value_of(key);
      for (unsigned k = 0; k < e; ++k) term *= v;
    }
    out.value += term;
  }
  return out;
}

ConsistencyCheck pullback_consistency_check(const DiffPoly& p, const AffineTransform& t,
                                            const TestFunction& f, const std::vector<Rational>& point,
                                            const std::map<std::string, Rational>& params) {
  t.validate();
  const std::size_t n = t.source.size();
  if (point.size() != n) throw Error(ErrorKind::DimensionMismatch, "point has the wrong dimension");
  RationalMatrix m(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = t.matrix[i][j].evaluate(params);
    b[i] = t.offset[i].evaluate(params);
  }
  const RationalMatrix inv = invert(m);

  ConsistencyCheck out;
  out.image_point.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    out.image_point[i] = b[i];
    for (std::size_t j = 0; j < n; ++j) out.image_point[i] += m[i][j] * point[j];
  }

  // old_i = sum_j inv[i][j] * (new_j - b_j)
  std::map<std::string, MPoly> old_in_new;
  for (std::size_t i = 0; i < n; ++i) {
    MPoly expr;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(inv[i][j]) != 0) expr += (MPoly::symbol(t.target[j]) - MPoly(b[j])) * inv[i][j];
    old_in_new[t.source[i]] = expr;
  }
  const TestFunction g{t.target, f.poly.substitute(old_in_new)};

  out.original = residual_eval(p, f, point, params).value;
  out.transformed = residual_eval(pullback(p, t), g, out.image_point, params).value;
  out.consistent = out.original == out.transformed;
  return out;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PDECANON_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
  }
  return kDefaultSeed;
}

Rational random_rational(std::mt19937_64& rng) {
  long num = nonzero_digit(rng);
  long den = nonzero_digit(rng);
  return make_rational(num, den);
}

std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_rational(rng));
  return out;
}

std::map<std::string, Rational> random_params(std::mt19937_64& rng, const std::vector<std::string>& names,
                                              const DegeneracyReport& avoid, int max_tries) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    std::map<std::string, Rational> values;
    for (const auto& n : names) values[n] = random_rational(rng);
    bool ok = true;
    for (const auto& c : avoid.conditions) {
      try {
        if (sgn(c.evaluate(values)) == 0) ok = false;
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) return values;
  }
  throw Error(ErrorKind::NoSolution, "no parameter values avoid the degeneracy conditions");
}

TestFunction random_test_function(std::mt19937_64& rng, const VarSet& vars, unsigned degree,
                                  unsigned terms) {
  MPoly poly;
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m;
    unsigned budget = static_cast<unsigned>(uniform(rng, 0, static_cast<int>(degree)));
    while (budget > 0) {
      const std::size_t v = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vars.size()) - 1));
      const unsigned e = static_cast<unsigned>(uniform(rng, 1, static_cast<int>(budget)));
      m = m * Monomial::symbol(vars[v], e);
      budget -= e;
    }
    poly += MPoly(m, random_rational(rng));
  }
  return {vars, poly};
}

DiffPoly random_diffpoly(std::mt19937_64& rng, const VarSet& vars, const std::vector<std::string>& params,
                         unsigned max_order, unsigned max_degree, unsigned terms) {
  DiffPoly out(vars);
  const int n = static_cast<int>(vars.size());
  for (unsigned k = 0; k < terms; ++k) {
    DiffMonomial m;
    const int degree = uniform(rng, 1, static_cast<int>(max_degree));
    for (int d = 0; d < degree; ++d) {
      DerivKey key = DerivKey::zero(vars.size());
      const int order = uniform(rng, 0, static_cast<int>(max_order));
      for (int o = 0; o < order; ++o) ++key.orders[static_cast<std::size_t>(uniform(rng, 0, n - 1))];
      m = m * DiffMonomial::of(key);
    }
    out.add_term(m, random_coefficient(rng, params));
  }
  return out;
}

AffineTransform random_transform(std::mt19937_64& rng, const VarSet& vars,
                                 const std::vector<std::string>& params) {
  const std::size_t n = vars.size();
  std::vector<std::string> names;
  for (const auto& v : vars.names()) names.push_back(v + "'");
  while (true) {
    AffineTransform t{vars, VarSet(names), Matrix(n, std::vector<RatFun>(n)), std::vector<RatFun>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          t.matrix[i][j] = random_coefficient(rng, params);
        else if (uniform(rng, 0, 1) == 0)
          t.matrix[i][j] = random_coefficient(rng, params);
      }
      if (uniform(rng, 0, 2) == 0) t.offset[i] = RatFun(random_rational(rng));
    }
    if (!determinant(t.matrix).is_zero()) return t;
  }
}

}  // namespace pdecanon

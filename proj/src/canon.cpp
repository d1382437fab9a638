#include "pdecanon/canon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "pdecanon/error.hpp"

namespace pdecanon {

namespace {

constexpr std::size_t kNodeBudget = 200000;

Matrix congruent(const Matrix& m, const Matrix& a) { return multiply(multiply(m, a), transpose(m)); }

void add_numerator(DegeneracyReport& report, const RatFun& f) {
  if (!f.is_zero()) report.add(f.num());
}

/// Scales row k of `m` (and the matching entries of `reduced`) by 1/g when
/// reduced[k][k] = g^2; otherwise records a note.
void normalize_pivot(Matrix& m, Matrix& reduced, std::size_t k, const std::string& name,
                     std::vector<NormalizationNote>& notes) {
  const RatFun d = reduced[k][k];
  if (d.is_zero() || d.is_one()) return;
  auto g = sqrt(d);
  if (!g) {
    notes.push_back({name, d});
    return;
  }
  const RatFun inv = RatFun(1) / *g;
  for (auto& entry : m[k]) entry *= inv;
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    reduced[k][j] *= inv;
    if (j != k) reduced[j][k] *= inv;
  }
  reduced[k][k] *= inv;
}

std::vector<std::string> primed(const VarSet& vars, const std::set<std::string>& keep = {}) {
  std::vector<std::string> names;
  for (const auto& n : vars.names()) names.push_back(keep.count(n) ? n : n + "'");
  for (std::size_t i = 0; i < names.size(); ++i)
    while (!keep.count(vars[i]) && std::count(names.begin(), names.end(), names[i]) > 1)
      names[i] += "'";
  return names;
}

std::vector<RatFun> diagonal_of(const Matrix& m) {
  std::vector<RatFun> d;
  for (std::size_t i = 0; i < m.size(); ++i) d.push_back(m[i][i]);
  return d;
}

}  // namespace

std::string NormalizationNote::to_string() const {
  return "coefficient " + radicand.to_string() + " of u_" + variable + variable +
         " is not a square; rescaling " + variable + " by 1/sqrt(" + radicand.to_string() +
         ") makes it 1 where it is positive";
}

PrincipalMatrix principal_matrix(const DiffPoly& p) {
  const std::size_t n = p.vars().size();
  Matrix a(n, std::vector<RatFun>(n));
  for (const auto& [m, c] : p.terms()) {
    if (m.factors().size() != 1 || m.factors()[0].second != 1) continue;
    const DerivKey& key = m.factors()[0].first;
    if (key.total() != 2) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < key.orders[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      a[idx[0]][idx[0]] += c;
    } else {
      RatFun half = c / RatFun(2);
      a[idx[0]][idx[1]] += half;
      a[idx[1]][idx[0]] += half;
    }
  }
  return {p.vars(), std::move(a)};
}

CanonReport lagrange_diagonalize(const PrincipalMatrix& pm) {
  const std::size_t n = pm.vars.size();
  Matrix s = identity_matrix(n);
  Matrix b = pm.entries;
  std::vector<bool> done(n, false);
  DegeneracyReport degeneracy;

  auto apply = [&](const Matrix& e) {
    s = multiply(s, e);
    b = multiply(multiply(transpose(e), b), e);
  };

  while (true) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n && !pivot; ++i)
      if (!done[i] && !b[i][i].is_zero()) pivot = i;
    if (pivot) {
      const std::size_t p = *pivot;
      Matrix e = identity_matrix(n);
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || j == p || b[p][j].is_zero()) continue;
        e[p][j] = -(b[p][j] / b[p][p]);
        any = true;
      }
      if (any) apply(e);
      done[p] = true;
      continue;
    }
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t i = 0; i < n && !pair; ++i)
      for (std::size_t j = i + 1; j < n && !pair; ++j)
        if (!done[i] && !done[j] && !b[i][j].is_zero()) pair = {i, j};
    if (!pair) break;
    const auto [i, j] = *pair;
    add_numerator(degeneracy, b[i][j]);
    Matrix e = identity_matrix(n);
    e[j][i] = RatFun(1);
    e[i][j] = RatFun(1);
    e[j][j] = RatFun(-1);
    apply(e);
  }

  Matrix m = transpose(s);
  std::vector<NormalizationNote> notes;
  const std::vector<std::string> names = primed(pm.vars);
  for (std::size_t k = 0; k < n; ++k) normalize_pivot(m, b, k, names[k], notes);

  CanonReport report{AffineTransform{pm.vars, VarSet(names), m, std::vector<RatFun>(n)},
                     diagonal_of(b), b, std::move(degeneracy), std::move(notes)};
  for (const auto& d : report.diagonal) add_numerator(report.degeneracy, d);
  report.degeneracy.merge(validity_conditions(report.transform));
  return report;
}

CanonReport derive_reduction(const DiffPoly& p, const std::vector<DerivKey>& eliminate,
                             const std::set<std::string>& frozen) {
  const VarSet& vars = p.vars();
  const std::size_t n = vars.size();
  for (const auto& f : frozen)
    if (!vars.index_of(f)) throw Error(ErrorKind::InvalidTarget, "unknown variable '" + f + "'");

  std::vector<std::pair<std::size_t, std::size_t>> targets;
  for (const auto& key : eliminate) {
    if (key.orders.size() != n || key.total() != 2 || p.coefficient(DiffMonomial::of(key)).is_zero())
      throw Error(ErrorKind::InvalidTarget, "not a u-linear second-order term of the equation");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < key.orders[i]; ++k) idx.push_back(i);
    targets.emplace_back(idx[0], idx[1]);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  const Matrix a = principal_matrix(p).entries;
  std::vector<bool> is_frozen(n);
  for (std::size_t i = 0; i < n; ++i) is_frozen[i] = frozen.count(vars[i]) > 0;

  // Unknown n_rk lives at m[r][k]; fixed[r][k] marks assigned unknowns.
  Matrix m = identity_matrix(n);
  std::vector<std::vector<bool>> fixed(n, std::vector<bool>(n, false));

  auto entry = [&](std::size_t i, std::size_t j) {
    RatFun sum;
    for (std::size_t k = 0; k < n; ++k) {
      if (m[i][k].is_zero()) continue;
      for (std::size_t l = 0; l < n; ++l)
        if (!m[j][l].is_zero() && !a[k][l].is_zero()) sum += m[i][k] * a[k][l] * m[j][l];
    }
    return sum;
  };

  std::size_t nodes = 0;
  std::function<bool()> search = [&]() -> bool {
    if (++nodes > kNodeBudget) return false;
    bool all_zero = true;
    for (const auto& [i, j] : targets) {
      if (entry(i, j).is_zero()) continue;
      all_zero = false;
      for (std::size_t r : {j, i}) {
        if (is_frozen[r]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == r || fixed[r][k]) continue;
          auto at = [&](long s) {
            m[r][k] = RatFun(s);
            return entry(i, j);
          };
          const RatFun e0 = at(0);
          const RatFun ep = at(1);
          const RatFun em = at(-1);
          m[r][k] = RatFun();
          const RatFun e1 = (ep - em) / RatFun(2);
          const RatFun e2 = (ep + em) / RatFun(2) - e0;
          if (!e2.is_zero() || e1.is_zero()) continue;
          m[r][k] = -(e0 / e1);
          fixed[r][k] = true;
          if (search()) return true;
          fixed[r][k] = false;
          m[r][k] = RatFun();
        }
        if (i == j) break;
      }
    }
    return all_zero && !determinant(m).is_zero();
  };
  if (!search()) {
    if (nodes > kNodeBudget)
      throw Error(ErrorKind::NoSolution, "search budget exhausted before a reduction was found");
    throw Error(ErrorKind::NoSolution,
                "eliminated terms cannot be removed one unknown at a time in the triangular family");
  }

  Matrix reduced = congruent(m, a);
  const std::vector<std::string> names = primed(vars, frozen);
  std::vector<NormalizationNote> notes;
  for (std::size_t k = 0; k < n; ++k)
    if (!is_frozen[k]) normalize_pivot(m, reduced, k, names[k], notes);

  CanonReport report{AffineTransform{vars, VarSet(names), m, std::vector<RatFun>(n)},
                     diagonal_of(reduced), reduced, DegeneracyReport{}, std::move(notes)};
  for (const auto& d : report.diagonal) add_numerator(report.degeneracy, d);
  report.degeneracy.merge(validity_conditions(report.transform));

  const DiffPoly image = pullback(p, report.transform);
  const Matrix check = principal_matrix(image).entries;
  if (check != report.reduced)
    throw Error(ErrorKind::NoSolution, "derived transform failed verification by pullback");
  for (const auto& [i, j] : targets)
    if (!check[i][j].is_zero())
      throw Error(ErrorKind::NoSolution, "derived transform leaves an eliminated term");
  return report;
}

}  // namespace pdecanon

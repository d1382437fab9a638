#include "pdecanon/equiv.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "pdecanon/error.hpp"

namespace pdecanon {

namespace {

constexpr std::size_t kMaxActive = 6;
constexpr std::size_t kMaxCandidates = 64;
constexpr char kUnknownPrefix = '@';

std::vector<std::size_t> active_list(const DiffPoly& p) {
  auto s = p.active_variables();
  return {s.begin(), s.end()};
}

unsigned exponent_of(const DiffMonomial& m, std::size_t var) {
  unsigned total = 0;
  for (const auto& [key, e] : m.factors()) total += key.orders[var] * e;
  return total;
}

/// Monomial with variable i of p renamed to index to[i] of a target VarSet.
DiffMonomial map_monomial(const DiffMonomial& m, const std::vector<std::size_t>& to,
                          std::size_t ntarget) {
  DiffMonomial out;
  for (const auto& [key, e] : m.factors()) {
    DerivKey k = DerivKey::zero(ntarget);
    for (std::size_t i = 0; i < key.orders.size(); ++i)
      if (key.orders[i] > 0) k.orders[to[i]] += key.orders[i];
    out = out * DiffMonomial::of(k, e);
  }
  return out;
}

bool is_power_of_two(long k) { return k > 0 && (k & (k - 1)) == 0; }

std::optional<Rational> exact_root(const Rational& value, unsigned long k) {
  if (sgn(value) < 0 && k % 2 == 0) return std::nullopt;
  mpz_class n = abs(value.get_num());
  const mpz_class& d = value.get_den();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) || !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k))
    return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  if (sgn(value) < 0) r = -r;
  return r;
}

std::optional<MPoly> monomial_root(const MPoly& p, unsigned long k) {
  if (!p.is_monomial()) return std::nullopt;
  auto coef = exact_root(p.leading_coefficient(), k);
  if (!coef) return std::nullopt;
  Monomial root;
  for (const auto& [name, e] : p.leading_monomial().factors()) {
    if (e % k != 0) return std::nullopt;
    root = root * Monomial::symbol(name, static_cast<unsigned>(e / k));
  }
  return MPoly(root, *coef);
}

/// All g in Q(params) with g^k = r that this solver can find (k >= 1).
std::vector<RatFun> nth_roots(const RatFun& r, long k) {
  if (k == 1) return {r};
  std::optional<RatFun> g;
  if (r.is_one()) {
    g = RatFun(1);
  } else if (is_power_of_two(k)) {
    g = r;
    for (long j = k; j > 1 && g; j /= 2) g = sqrt(*g);
  } else {
    auto n = monomial_root(r.num(), static_cast<unsigned long>(k));
    auto d = monomial_root(r.den(), static_cast<unsigned long>(k));
    if (n && d) g = RatFun(*n, *d);
  }
  if (!g) return {};
  if (k % 2 == 0) return {*g, -*g};
  return {*g};
}

// Multiplicative system prod_j x_j^a[j] = rhs over the unit group of Q(params).
struct Row {
  std::vector<long> a;
  RatFun rhs;
};

struct Echelon {
  std::vector<Row> rows;
  std::vector<std::size_t> pivot_cols;
  bool consistent = true;
};

/// Integer row reduction with unimodular steps, so the solution set is kept.
Echelon echelonize(std::vector<Row> rows, std::size_t ncols) {
  Echelon out;
  std::size_t start = 0;
  for (std::size_t col = 0; col < ncols && start < rows.size(); ++col) {
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t r = start; r < rows.size(); ++r)
        if (rows[r].a[col] != 0 &&
            (!best || std::labs(rows[r].a[col]) < std::labs(rows[*best].a[col])))
          best = r;
      if (!best) break;
      std::swap(rows[start], rows[*best]);
      const Row& piv = rows[start];
      bool remaining = false;
      for (std::size_t r = start + 1; r < rows.size(); ++r) {
        long q = rows[r].a[col] / piv.a[col];
        if (q != 0) {
          for (std::size_t j = 0; j < ncols; ++j) rows[r].a[j] -= q * piv.a[j];
          rows[r].rhs *= piv.rhs.pow(-q);
        }
        if (rows[r].a[col] != 0) remaining = true;
      }
      if (!remaining) {
        out.pivot_cols.push_back(col);
        ++start;
        break;
      }
    }
  }
  for (std::size_t r = start; r < rows.size(); ++r)
    if (!rows[r].rhs.is_one()) out.consistent = false;
  rows.resize(start);
  out.rows = std::move(rows);
  return out;
}

/// Solutions with free columns set to 1, branching over root choices.
std::vector<std::vector<RatFun>> back_substitute(const Echelon& e, std::size_t ncols,
                                                 bool& unsupported) {
  std::vector<std::vector<RatFun>> out;
  std::vector<RatFun> x(ncols, RatFun(1));
  std::function<void(std::size_t)> step = [&](std::size_t k) {
    if (out.size() >= kMaxCandidates) return;
    if (k == 0) {
      out.push_back(x);
      return;
    }
    const Row& row = e.rows[k - 1];
    const std::size_t col = e.pivot_cols[k - 1];
    RatFun rhs = row.rhs;
    for (std::size_t j = col + 1; j < ncols; ++j)
      if (row.a[j] != 0) rhs *= x[j].pow(-row.a[j]);
    long a = row.a[col];
    if (a < 0) {
      rhs = RatFun(1) / rhs;
      a = -a;
    }
    auto roots = nth_roots(rhs, a);
    if (roots.empty()) unsupported = true;
    for (const auto& g : roots) {
      x[col] = g;
      step(k - 1);
    }
    x[col] = RatFun(1);
  };
  step(e.rows.size());
  return out;
}

/// Diagonalizes the system with unimodular row and column operations. With
/// x = V y the equations read y_i^d_i = rhs_i, so every rational solution of
/// the monomial system is reached; free y are set to 1.
std::vector<std::vector<RatFun>> smith_solve(std::vector<Row> rows, std::size_t ncols,
                                             bool& unsupported) {
  const std::size_t m = rows.size();
  std::vector<std::vector<long>> v(ncols, std::vector<long>(ncols, 0));
  for (std::size_t j = 0; j < ncols; ++j) v[j][j] = 1;
  auto column_op = [&](std::size_t j, std::size_t t, long q) {  // col_j -= q * col_t
    for (auto& r : rows) r.a[j] -= q * r.a[t];
    for (auto& r : v) r[j] -= q * r[t];
  };
  auto swap_columns = [&](std::size_t i, std::size_t j) {
    for (auto& r : rows) std::swap(r.a[i], r.a[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
  };

  std::size_t rank = 0;
  for (; rank < std::min(m, ncols); ++rank) {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t r = rank; r < m; ++r)
        for (std::size_t c = rank; c < ncols; ++c)
          if (rows[r].a[c] != 0 &&
              (!best || std::labs(rows[r].a[c]) < std::labs(rows[best->first].a[best->second])))
            best = std::make_pair(r, c);
      if (!best) break;
      std::swap(rows[rank], rows[best->first]);
      swap_columns(rank, best->second);
      const long piv = rows[rank].a[rank];
      bool clean = true;
      for (std::size_t r = rank + 1; r < m; ++r) {
        const long q = rows[r].a[rank] / piv;
        if (q != 0) {
          for (std::size_t j = 0; j < ncols; ++j) rows[r].a[j] -= q * rows[rank].a[j];
          rows[r].rhs *= rows[rank].rhs.pow(-q);
        }
        if (rows[r].a[rank] != 0) clean = false;
      }
      for (std::size_t c = rank + 1; c < ncols; ++c) {
        const long q = rows[rank].a[c] / piv;
        if (q != 0) column_op(c, rank, q);
        if (rows[rank].a[c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[rank].a[rank] == 0) break;
  }
  for (std::size_t r = rank; r < m; ++r)
    if (!rows[r].rhs.is_one()) return {};

  std::vector<std::vector<RatFun>> out;
  std::vector<RatFun> y(ncols, RatFun(1));
  std::function<void(std::size_t)> step = [&](std::size_t i) {
    if (out.size() >= kMaxCandidates) return;
    if (i == rank) {
      std::vector<RatFun> x(ncols, RatFun(1));
      for (std::size_t j = 0; j < ncols; ++j)
        for (std::size_t k = 0; k < ncols; ++k)
          if (v[j][k] != 0) x[j] *= y[k].pow(v[j][k]);
      out.push_back(std::move(x));
      return;
    }
    long d = rows[i].a[i];
    RatFun rhs = rows[i].rhs;
    if (d < 0) {
      rhs = RatFun(1) / rhs;
      d = -d;
    }
    auto roots = nth_roots(rhs, d);
    if (roots.empty()) unsupported = true;
    for (const auto& g : roots) {
      y[i] = g;
      step(i + 1);
    }
    y[i] = RatFun(1);
  };
  step(0);
  return out;
}

struct Equation {
  DiffMonomial source;  // monomial of p
  RatFun p_coef;
  RatFun q_coef;  // target coefficient with parameters renamed to @k
};

std::string print_param_map(const std::map<std::string, RatFun>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += k + "=" + v.to_string() + ";";
  return s;
}

/// Solves the remaining equations for @-parameters that occur alone in them.
/// Returns all completed assignments; sets `unsupported` if some equation
/// could not be handled.
void solve_deferred(std::vector<std::pair<RatFun, RatFun>> pending,  // (lhs value, q_coef)
                    std::map<std::string, RatFun> phi,
                    std::vector<std::map<std::string, RatFun>>& out, bool& unsupported) {
  if (out.size() >= kMaxCandidates) return;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    RatFun q = pending[i].second.substitute(phi);
    std::vector<std::string> unknowns;
    for (const auto& s : q.params())
      if (s[0] == kUnknownPrefix) unknowns.push_back(s);
    if (unknowns.size() != 1) continue;
    const std::string& var = unknowns[0];
    const RatFun f = q - pending[i].first;
    const std::vector<MPoly> coefs = f.num().coefficients_in(var);
    std::vector<std::size_t> nonzero;
    for (std::size_t k = 0; k < coefs.size(); ++k)
      if (!coefs[k].is_zero()) nonzero.push_back(k);
    pending.erase(pending.begin() + static_cast<long>(i));
    if (nonzero.empty()) return solve_deferred(std::move(pending), std::move(phi), out, unsupported);
    if (nonzero.size() != 2 || nonzero[0] != 0) {
      unsupported = true;
      return;
    }
    const long k = static_cast<long>(nonzero[1]);
    const RatFun value = -(RatFun(coefs[0]) / RatFun(coefs[nonzero[1]]));
    auto roots = nth_roots(value, k);
    if (roots.empty()) unsupported = true;
    for (const auto& g : roots) {
      auto next = phi;
      next[var] = g;
      solve_deferred(pending, std::move(next), out, unsupported);
    }
    return;
  }
  // No equation with a single unknown is left.
  for (const auto& [lhs, q] : pending) {
    for (const auto& s : q.substitute(phi).params())
      if (s[0] == kUnknownPrefix) {
        unsupported = true;
        return;
      }
  }
  out.push_back(std::move(phi));
}

}  // namespace

// ------------------------------------------------------------ WitnessData

bool WitnessData::is_identity() const {
  for (const auto& [from, to] : perm)
    if (from != to) return false;
  for (const auto& [name, s] : var_scales)
    if (!s.is_one()) return false;
  for (const auto& [name, v] : param_map)
    if (!(v == RatFun::param(name))) return false;
  return dep_scale.is_one() && overall.is_one();
}

MatchWitness::MatchWitness(const PdeDoc& p, const PdeDoc& q, WitnessData data)
    : data_(std::move(data)) {
  if (!verify_witness(p, q, data_))
    throw Error(ErrorKind::InvalidTarget, "witness does not map the first equation onto the second");
}

std::string to_string(Invariant inv) {
  switch (inv) {
    case Invariant::VariableCount: return "variable count";
    case Invariant::DerivativeOrders: return "derivative-order multiset";
    case Invariant::UDegrees: return "u-degree multiset";
    case Invariant::MonomialSupport: return "monomial support";
  }
  return "unknown";
}

std::string compute_invariant(const DiffPoly& p, Invariant inv) {
  auto join = [](const std::vector<unsigned>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  const auto active = active_list(p);
  switch (inv) {
    case Invariant::VariableCount: return std::to_string(active.size());
    case Invariant::DerivativeOrders:
    case Invariant::UDegrees: {
      std::vector<unsigned> values;
      for (const auto& [m, c] : p.terms())
        values.push_back(inv == Invariant::UDegrees ? m.degree() : m.weight());
      std::sort(values.begin(), values.end());
      return join(values);
    }
    case Invariant::MonomialSupport: {
      const std::size_t k = active.size();
      if (k > kMaxActive)
        throw Error(ErrorKind::SearchBudgetExceeded, std::to_string(k) + " active variables");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < k; ++i) names.emplace_back(1, static_cast<char>('a' + i));
      const VarSet placeholder = k ? VarSet(names) : VarSet({"a"});
      std::vector<std::size_t> order(k);
      std::iota(order.begin(), order.end(), 0);
      std::optional<std::string> best;
      do {
        std::vector<std::size_t> to(p.vars().size(), 0);
        for (std::size_t i = 0; i < k; ++i) to[active[i]] = order[i];
        std::vector<std::string> items;
        for (const auto& [m, c] : p.terms())
          items.push_back(format_monomial(map_monomial(m, to, placeholder.size()), placeholder,
                                          Notation::Subscript));
        std::sort(items.begin(), items.end());
        std::string s;
        for (const auto& it : items) s += (s.empty() ? "" : " ; ") + it;
        if (!best || s < *best) best = s;
      } while (std::next_permutation(order.begin(), order.end()));
      return "{" + *best + "}";
    }
  }
  return {};
}

bool structural_equal(const DiffPoly& p, const DiffPoly& q) {
  if (!(p.vars() == q.vars()))
    throw Error(ErrorKind::VarSetMismatch,
                "(" + p.vars().to_string() + ") vs (" + q.vars().to_string() + ")");
  return p == q;
}

DiffPoly apply_witness(const DiffPoly& p, const WitnessData& w, const VarSet& target) {
  const std::size_t n = p.vars().size();
  std::vector<std::optional<std::size_t>> to(n);
  std::vector<RatFun> scale(n, RatFun(1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& name = p.vars()[i];
    auto it = w.perm.find(name);
    if (it != w.perm.end()) {
      to[i] = target.index_of(it->second);
      if (!to[i])
        throw Error(ErrorKind::InvalidTarget, "'" + it->second + "' is not a target variable");
    }
    auto s = w.var_scales.find(name);
    if (s != w.var_scales.end()) scale[i] = s->second;
  }
  if (w.dep_scale.is_zero() || w.overall.is_zero())
    throw Error(ErrorKind::ZeroScale, "witness scale is zero");
  DiffPoly out(target);
  for (const auto& [m, c] : p.terms()) {
    RatFun coef = c * w.overall * w.dep_scale.pow(m.degree());
    std::vector<std::size_t> index(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned e = exponent_of(m, i);
      if (e == 0) continue;
      if (!to[i])
        throw Error(ErrorKind::InvalidTarget, "variable '" + p.vars()[i] + "' is not mapped");
      index[i] = *to[i];
      coef *= scale[i].pow(e);
    }
    out.add_term(map_monomial(m, index, target.size()), coef);
  }
  return out;
}

bool verify_witness(const PdeDoc& p, const PdeDoc& q, const WitnessData& w) {
  try {
    return apply_witness(p.lhs, w, q.vars) == subst_params(q.lhs, w.param_map);
  } catch (const Error&) {
    return false;
  }
}

MatchResult match_modulo(const PdeDoc& p, const PdeDoc& q) {
  for (Invariant inv : {Invariant::VariableCount, Invariant::DerivativeOrders, Invariant::UDegrees,
                        Invariant::MonomialSupport}) {
    if (inv == Invariant::MonomialSupport && active_list(p.lhs).size() > kMaxActive)
      throw Error(ErrorKind::SearchBudgetExceeded,
                  std::to_string(active_list(p.lhs).size()) + " active variables");
    std::string left = compute_invariant(p.lhs, inv);
    std::string right = compute_invariant(q.lhs, inv);
    if (left != right) return RefutationCertificate{inv, left, right};
  }

  const auto ap = active_list(p.lhs);
  const auto aq = active_list(q.lhs);
  const std::size_t k = ap.size();

  // Target parameters become @0, @1, ... so they cannot collide with source names.
  std::vector<std::string> tparams;
  for (const auto& name : q.params)
    if (q.lhs.params().count(name)) tparams.push_back(name);
  std::map<std::string, RatFun> rename;
  for (std::size_t i = 0; i < tparams.size(); ++i)
    rename[tparams[i]] = RatFun::param(std::string(1, kUnknownPrefix) + std::to_string(i));

  std::set<DiffMonomial> q_support;
  for (const auto& [m, c] : q.lhs.terms()) q_support.insert(m);

  std::vector<std::size_t> order = aq;
  do {
    std::vector<std::size_t> to(p.vars.size(), 0);
    for (std::size_t i = 0; i < k; ++i) to[ap[i]] = order[i];

    std::vector<Equation> eqs;
    bool support_ok = true;
    for (const auto& [m, c] : p.lhs.terms()) {
      DiffMonomial image = map_monomial(m, to, q.vars.size());
      if (!q_support.count(image)) {
        support_ok = false;
        break;
      }
      eqs.push_back({m, c, q.lhs.coefficient(image).substitute(rename)});
    }
    if (!support_ok) continue;

    // Columns: monomial target parameters, c, kappa, then one scale per
    // target variable.
    std::vector<std::string> pcols;
    for (const auto& e : eqs)
      if (e.q_coef.is_monomial())
        for (const auto& s : e.q_coef.params())
          if (std::find(pcols.begin(), pcols.end(), s) == pcols.end()) pcols.push_back(s);
    std::sort(pcols.begin(), pcols.end(), [](const std::string& a, const std::string& b) {
      return std::stoul(a.substr(1)) < std::stoul(b.substr(1));
    });
    const std::size_t c_col = pcols.size();
    const std::size_t kappa_col = c_col + 1;
    const std::size_t s_base = c_col + 2;
    const std::size_t ncols = s_base + k;
    std::vector<std::size_t> s_col(p.vars.size(), 0);
    {
      std::vector<std::size_t> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < k; ++i)
        s_col[ap[i]] = s_base + static_cast<std::size_t>(
                                    std::find(sorted.begin(), sorted.end(), order[i]) - sorted.begin());
    }
    auto exponents = [&](const DiffMonomial& m) {
      std::vector<long> a(ncols, 0);
      a[c_col] = 1;
      a[kappa_col] = m.degree();
      for (std::size_t i : ap) a[s_col[i]] += exponent_of(m, i);
      return a;
    };

    std::vector<Row> rows;
    std::vector<const Equation*> deferred;
    for (const auto& e : eqs) {
      if (!e.q_coef.is_monomial()) {
        deferred.push_back(&e);
        continue;
      }
      std::vector<long> a = exponents(e.source);
      const Rational q0 = e.q_coef.num().leading_coefficient() / e.q_coef.den().leading_coefficient();
      for (const auto& [name, ex] : e.q_coef.num().leading_monomial().factors())
        a[std::find(pcols.begin(), pcols.end(), name) - pcols.begin()] -= ex;
      for (const auto& [name, ex] : e.q_coef.den().leading_monomial().factors())
        a[std::find(pcols.begin(), pcols.end(), name) - pcols.begin()] += ex;
      rows.push_back({std::move(a), RatFun(q0) / e.p_coef});
    }
    bool unsupported = false;
    std::vector<WitnessData> verified;
    auto try_solutions = [&](const std::vector<std::vector<RatFun>>& solutions) {
      for (const auto& x : solutions) {
        std::map<std::string, RatFun> phi;
        for (std::size_t j = 0; j < pcols.size(); ++j) phi[pcols[j]] = x[j];
        std::vector<std::pair<RatFun, RatFun>> pending;
        for (const Equation* e : deferred) {
          RatFun lhs = x[c_col] * x[kappa_col].pow(e->source.degree()) * e->p_coef;
          for (std::size_t i : ap) lhs *= x[s_col[i]].pow(exponent_of(e->source, i));
          pending.emplace_back(lhs, e->q_coef);
        }
        std::vector<std::map<std::string, RatFun>> completed;
        solve_deferred(std::move(pending), phi, completed, unsupported);
        for (auto& full : completed) {
          WitnessData w;
          for (std::size_t i = 0; i < k; ++i) {
            w.perm[p.vars[ap[i]]] = q.vars[order[i]];
            w.var_scales[p.vars[ap[i]]] = x[s_col[ap[i]]];
          }
          w.overall = x[c_col];
          w.dep_scale = x[kappa_col];
          for (std::size_t j = 0; j < tparams.size(); ++j) {
            const std::string key = std::string(1, kUnknownPrefix) + std::to_string(j);
            auto it = full.find(key);
            w.param_map[tparams[j]] = it != full.end() ? it->second : RatFun(1);
          }
          if (verify_witness(p, q, w)) verified.push_back(std::move(w));
        }
      }
    };
    const Echelon ech = echelonize(rows, ncols);
    if (!ech.consistent) continue;
    try_solutions(back_substitute(ech, ncols, unsupported));
    if (verified.empty()) try_solutions(smith_solve(std::move(rows), ncols, unsupported));
    if (!verified.empty()) {
      for (const auto& w : verified)
        if (w.is_identity()) return MatchWitness(p, q, w);
      auto best = std::min_element(verified.begin(), verified.end(),
                                   [](const WitnessData& a, const WitnessData& b) {
                                     return print_param_map(a.param_map) < print_param_map(b.param_map);
                                   });
      return MatchWitness(p, q, *best);
    }
  } while (std::next_permutation(order.begin(), order.end()));

  throw Error(ErrorKind::UnresolvedNonlinearSystem,
              "no witness found and no structural invariant separates the equations");
}

}  // namespace pdecanon

#include "pdecanon/diffpoly.hpp"

#include <algorithm>
#include <numeric>

#include "pdecanon/error.hpp"

namespace pdecanon {

// ------------------------------------------------------------------ VarSet

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error(ErrorKind::InvalidDeclaration, "empty variable list");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error(ErrorKind::InvalidDeclaration, "empty variable name");
    if (!seen.insert(n).second)
      throw Error(ErrorKind::InvalidDeclaration, "variable '" + n + "' declared twice");
  }
}

std::optional<std::size_t> VarSet::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::string VarSet::to_string() const {
  std::string s;
  for (const auto& n : names_) s += (s.empty() ? "" : ",") + n;
  return s;
}

// ---------------------------------------------------------------- DerivKey

DerivKey DerivKey::of(std::size_t nvars, std::initializer_list<std::size_t> vars) {
  DerivKey k = zero(nvars);
  for (auto v : vars) ++k.orders.at(v);
  return k;
}

unsigned DerivKey::total() const noexcept {
  return std::accumulate(orders.begin(), orders.end(), 0U);
}

DerivKey DerivKey::plus(std::size_t var, unsigned count) const {
  DerivKey k = *this;
  k.orders.at(var) += count;
  return k;
}

bool operator<(const DerivKey& a, const DerivKey& b) {
  unsigned ta = a.total();
  unsigned tb = b.total();
  if (ta != tb) return ta < tb;
  for (std::size_t i = 0; i < a.orders.size() && i < b.orders.size(); ++i)
    if (a.orders[i] != b.orders[i]) return a.orders[i] > b.orders[i];
  return a.orders.size() < b.orders.size();
}

bool is_second_order(const DerivKey& key) { return key.total() == 2; }

// ------------------------------------------------------------ DiffMonomial

DiffMonomial DiffMonomial::of(const DerivKey& key, unsigned exponent) {
  DiffMonomial m;
  if (exponent > 0) m.factors_.emplace_back(key, exponent);
  return m;
}

unsigned DiffMonomial::degree() const noexcept {
  unsigned d = 0;
  for (const auto& [k, e] : factors_) d += e;
  return d;
}

unsigned DiffMonomial::weight() const noexcept {
  unsigned w = 0;
  for (const auto& [k, e] : factors_) w += k.total() * e;
  return w;
}

unsigned DiffMonomial::max_order() const noexcept {
  unsigned m = 0;
  for (const auto& [k, e] : factors_) m = std::max(m, k.total());
  return m;
}

DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b) {
  DiffMonomial m;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      m.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      m.factors_.push_back(*j++);
    } else {
      m.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return m;
}

bool operator<(const DiffMonomial& a, const DiffMonomial& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // Walk both expanded factor sequences (u_x^2 reads as u_x, u_x).
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  unsigned used_a = 0, used_b = 0;
  while (i < fa.size() && j < fb.size()) {
    if (!(fa[i].first == fb[j].first)) return fa[i].first < fb[j].first;
    unsigned step = std::min(fa[i].second - used_a, fb[j].second - used_b);
    used_a += step;
    used_b += step;
    if (used_a == fa[i].second) {
      ++i;
      used_a = 0;
    }
    if (used_b == fb[j].second) {
      ++j;
      used_b = 0;
    }
  }
  return false;
}

// ---------------------------------------------------------------- DiffPoly

namespace {

void require_same_vars(const VarSet& a, const VarSet& b) {
  if (!(a == b))
    throw Error(ErrorKind::VarSetMismatch, "(" + a.to_string() + ") vs (" + b.to_string() + ")");
}

}  // namespace

DiffPoly DiffPoly::constant(VarSet vars, const RatFun& value) {
  DiffPoly p(std::move(vars));
  p.add_term(DiffMonomial{}, value);
  return p;
}

DiffPoly DiffPoly::derivative_of_u(VarSet vars, const DerivKey& key) {
  if (key.orders.size() != vars.size())
    throw Error(ErrorKind::DimensionMismatch, "derivative key does not match variable count");
  DiffPoly p(std::move(vars));
  p.add_term(DiffMonomial::of(key), RatFun(1));
  return p;
}

DiffPoly DiffPoly::unknown(VarSet vars) {
  auto n = vars.size();
  return derivative_of_u(std::move(vars), DerivKey::zero(n));
}

std::optional<RatFun> DiffPoly::as_constant() const {
  if (terms_.empty()) return RatFun();
  if (terms_.size() == 1 && terms_.begin()->first.is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

RatFun DiffPoly::coefficient(const DiffMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFun() : it->second;
}

void DiffPoly::add_term(const DiffMonomial& m, const RatFun& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
  require_same_vars(vars_, other.vars_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
  require_same_vars(vars_, other.vars_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const RatFun& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  require_same_vars(a.vars_, b.vars_);
  DiffPoly out(a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (!(a.vars_ == b.vars_) || a.terms_.size() != b.terms_.size()) return false;
  auto i = a.terms_.begin();
  for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
    if (!(i->first == j->first) || !(i->second == j->second)) return false;
  return true;
}

DiffPoly DiffPoly::pow(unsigned exponent) const {
  DiffPoly result = constant(vars_, RatFun(1));
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

DiffPoly DiffPoly::total_derivative(std::size_t var) const {
  if (var >= vars_.size()) throw Error(ErrorKind::DimensionMismatch, "variable index out of range");
  DiffPoly out(vars_);
  for (const auto& [m, c] : terms_) {
    const auto& fs = m.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      // d/dx (w^e * rest) = e * w^(e-1) * w_x * rest
      DiffMonomial rest;
      for (std::size_t j = 0; j < fs.size(); ++j)
        if (j != i) rest = rest * DiffMonomial::of(fs[j].first, fs[j].second);
      DiffMonomial term = rest * DiffMonomial::of(fs[i].first, fs[i].second - 1) *
                          DiffMonomial::of(fs[i].first.plus(var));
      out.add_term(term, c * RatFun(static_cast<long>(fs[i].second)));
    }
  }
  return out;
}

DiffPoly DiffPoly::total_derivative(const DerivKey& key) const {
  if (key.orders.size() != vars_.size())
    throw Error(ErrorKind::DimensionMismatch, "derivative key does not match variable count");
  DiffPoly out = *this;
  for (std::size_t v = 0; v < key.orders.size(); ++v)
    for (unsigned k = 0; k < key.orders[v]; ++k) out = out.total_derivative(v);
  return out;
}

std::set<std::size_t> DiffPoly::active_variables() const {
  std::set<std::size_t> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [k, e] : m.factors())
      for (std::size_t i = 0; i < k.orders.size(); ++i)
        if (k.orders[i] > 0) out.insert(i);
  return out;
}

std::vector<std::string> DiffPoly::inactive_variables() const {
  std::vector<std::string> out;
  const auto active = active_variables();
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (!active.count(i)) out.push_back(vars_[i]);
  return out;
}

unsigned DiffPoly::max_order() const noexcept {
  unsigned m = 0;
  for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_order());
  return m;
}

std::set<std::string> DiffPoly::params() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& p : c.params()) out.insert(p);
  return out;
}

DiffPoly DiffPoly::relabeled(VarSet vars) const {
  if (vars.size() != vars_.size())
    throw Error(ErrorKind::DimensionMismatch, "relabeling needs the same number of variables");
  DiffPoly out(std::move(vars));
  out.terms_ = terms_;
  return out;
}

// ------------------------------------------------------------- operations

DiffPoly normal_form(const DiffPoly& p) { return p; }

DiffPoly subst_params(const DiffPoly& p, const std::map<std::string, RatFun>& assignment) {
  if (assignment.empty()) return p;
  DiffPoly out(p.vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, c.substitute(assignment));
  return out;
}

DiffPoly scale_dependent(const DiffPoly& p, const RatFun& kappa) {
  if (kappa.is_zero()) throw Error(ErrorKind::ZeroScale, "dependent-variable scale is zero");
  DiffPoly out(p.vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, c * kappa.pow(m.degree()));
  return out;
}

}  // namespace pdecanon

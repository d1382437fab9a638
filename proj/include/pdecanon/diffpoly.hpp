#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdecanon/ratfun.hpp"

namespace pdecanon {

/// Ordered, nonempty list of independent-variable names.
class VarSet {
 public:
  VarSet() = default;
  /// Throws Error(InvalidDeclaration) on empty or repeated names.
  explicit VarSet(std::vector<std::string> names);
  VarSet(std::initializer_list<std::string> names) : VarSet(std::vector<std::string>(names)) {}

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& operator[](std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  friend bool operator==(const VarSet&, const VarSet&) = default;

  std::string to_string() const;

 private:
  std::vector<std::string> names_;
};

/// Multi-index of a partial derivative of u: orders[i] differentiations in
/// the i-th variable. All zeros is u itself. Mixed partials commute because
/// the index is unordered.
struct DerivKey {
  std::vector<unsigned> orders;

  DerivKey() = default;
  explicit DerivKey(std::vector<unsigned> o) : orders(std::move(o)) {}
  static DerivKey zero(std::size_t nvars) { return DerivKey(std::vector<unsigned>(nvars, 0)); }
  /// Key from variable indices, e.g. {0, 1} for u_tx.
  static DerivKey of(std::size_t nvars, std::initializer_list<std::size_t> vars);

  unsigned total() const noexcept;
  DerivKey plus(std::size_t var, unsigned count = 1) const;

  friend bool operator==(const DerivKey&, const DerivKey&) = default;
};

/// Total order first; among equal totals, more differentiations in earlier
/// variables come first (u_tt < u_tx < u_xx for VarSet (t, x)).
bool operator<(const DerivKey& a, const DerivKey& b);

/// Product of powers of derivatives of u; empty = the constant monomial.
class DiffMonomial {
 public:
  using Factor = std::pair<DerivKey, unsigned>;

  DiffMonomial() = default;
  static DiffMonomial of(const DerivKey& key, unsigned exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_constant() const noexcept { return factors_.empty(); }
  /// Total u-degree.
  unsigned degree() const noexcept;
  /// Sum of derivative orders, counted with multiplicity.
  unsigned weight() const noexcept;
  unsigned max_order() const noexcept;

  friend DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b);
  friend bool operator==(const DiffMonomial&, const DiffMonomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by DerivKey order
};

/// Normal-form order: weight, then u-degree, then the sorted factor sequence
/// compared lexicographically.
bool operator<(const DiffMonomial& a, const DiffMonomial& b);

/// Differential polynomial in u over a VarSet with Q(params) coefficients.
/// Always held in normal form: collected, no zero coefficients, ordered.
class DiffPoly {
 public:
  using Terms = std::map<DiffMonomial, RatFun>;

  explicit DiffPoly(VarSet vars) : vars_(std::move(vars)) {}
  static DiffPoly constant(VarSet vars, const RatFun& value);
  static DiffPoly derivative_of_u(VarSet vars, const DerivKey& key);
  static DiffPoly unknown(VarSet vars);

  const VarSet& vars() const noexcept { return vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient when the polynomial does not involve u.
  std::optional<RatFun> as_constant() const;
  RatFun coefficient(const DiffMonomial& m) const;

  /// Adds c*m into the normal form.
  void add_term(const DiffMonomial& m, const RatFun& c);

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& other);
  DiffPoly& operator-=(const DiffPoly& other);
  DiffPoly& operator*=(const RatFun& factor);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(DiffPoly a, const RatFun& b) { return a *= b; }
  friend DiffPoly operator*(const RatFun& a, DiffPoly b) { return b *= a; }
  /// Same VarSet and identical normal forms.
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

  DiffPoly pow(unsigned exponent) const;

  /// D_var applied as a derivation (linearity, Leibniz, power rule).
  DiffPoly total_derivative(std::size_t var) const;
  DiffPoly total_derivative(const DerivKey& key) const;

  /// Indices of variables occurring in some derivative key.
  std::set<std::size_t> active_variables() const;
  /// Names of declared variables that occur in no derivative key.
  std::vector<std::string> inactive_variables() const;
  unsigned max_order() const noexcept;
  std::set<std::string> params() const;

  /// Same terms re-expressed over `vars` (which must have the same size).
  DiffPoly relabeled(VarSet vars) const;

 private:
  VarSet vars_;
  Terms terms_;
};

/// Identity on this representation: every DiffPoly is already normalized.
/// Exposed so callers can state where a normal form is required.
DiffPoly normal_form(const DiffPoly& p);

/// Rewrites coefficients under a parameter assignment, dropping terms that
/// vanish. Throws Error(PoleAtPoint) when a denominator becomes zero.
DiffPoly subst_params(const DiffPoly& p, const std::map<std::string, RatFun>& assignment);

/// Substitutes u -> kappa*u: a term of u-degree d is multiplied by kappa^d.
/// Throws Error(ZeroScale) for kappa = 0.
DiffPoly scale_dependent(const DiffPoly& p, const RatFun& kappa);

/// True for keys of total order two (u_{x_i x_j}).
bool is_second_order(const DerivKey& key);

}  // namespace pdecanon

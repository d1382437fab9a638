#pragma once

#include <map>
#include <string>
#include <variant>

#include "pdecanon/parser.hpp"

namespace pdecanon {

/// Data of a candidate equivalence p -> q. Each active source variable x is
/// sent to perm[x] with d/dx -> var_scales[x] * d/d perm[x]; u is replaced by
/// dep_scale*u and the result is multiplied by overall. The image must equal q
/// after substituting param_map (target parameter -> expression in source
/// parameters) into q.
struct WitnessData {
  std::map<std::string, std::string> perm;
  std::map<std::string, RatFun> var_scales;
  RatFun dep_scale{1};
  RatFun overall{1};
  std::map<std::string, RatFun> param_map;

  bool is_identity() const;
};

/// WitnessData that has been checked against its two equations.
class MatchWitness {
 public:
  /// Throws Error(InvalidTarget) unless `data` maps p onto q exactly.
  MatchWitness(const PdeDoc& p, const PdeDoc& q, WitnessData data);

  const WitnessData& data() const noexcept { return data_; }

 private:
  WitnessData data_;
};

enum class Invariant { VariableCount, DerivativeOrders, UDegrees, MonomialSupport };

std::string to_string(Invariant inv);

/// Canonical text form of an invariant of p; equivalent equations give equal
/// strings. MonomialSupport is the least sorted support over all relabelings
/// of the active variables.
std::string compute_invariant(const DiffPoly& p, Invariant inv);

struct RefutationCertificate {
  Invariant invariant;
  std::string left;
  std::string right;
};

using MatchResult = std::variant<MatchWitness, RefutationCertificate>;

/// Identical normal forms. Throws Error(VarSetMismatch) for different VarSets.
bool structural_equal(const DiffPoly& p, const DiffPoly& q);

/// Image of p under the variable part of `w` (perm, scales, dep_scale,
/// overall), expressed over `target`. Throws Error(InvalidTarget) when p uses
/// a variable that perm does not map.
DiffPoly apply_witness(const DiffPoly& p, const WitnessData& w, const VarSet& target);

bool verify_witness(const PdeDoc& p, const PdeDoc& q, const WitnessData& w);

/// Searches variable permutations of the active variables in lexicographic
/// order and solves for the scalings and parameter map from the monomial
/// coefficients. Returns the first verified witness, or a certificate naming
/// the first separating invariant. Throws Error(SearchBudgetExceeded) for more
/// than six active variables and Error(UnresolvedNonlinearSystem) when no
/// witness is found and no invariant separates the equations.
MatchResult match_modulo(const PdeDoc& p, const PdeDoc& q);

}  // namespace pdecanon

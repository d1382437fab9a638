#pragma once

#include <set>
#include <string>
#include <vector>

#include "pdecanon/transform.hpp"

namespace pdecanon {

/// Symmetric coefficient matrix of the u-linear second-order terms:
/// c*u_{x_i x_i} goes to A[i][i], c*u_{x_i x_j} to A[i][j] = A[j][i] = c/2.
struct PrincipalMatrix {
  VarSet vars;
  Matrix entries;
};

/// A diagonal coefficient that is not a square in Q(params), so it was left
/// unnormalized. Scaling `variable` by 1/sqrt(radicand) would make it 1.
struct NormalizationNote {
  std::string variable;
  RatFun radicand;

  std::string to_string() const;
};

struct CanonReport {
  AffineTransform transform;
  /// Diagonal of `reduced`.
  std::vector<RatFun> diagonal;
  /// Principal matrix in the target variables, transform.matrix * A * transpose.
  /// Diagonal for lagrange_diagonalize; derive_reduction only guarantees the
  /// eliminated entries vanish.
  Matrix reduced;
  DegeneracyReport degeneracy;
  std::vector<NormalizationNote> normalization_notes;
};

PrincipalMatrix principal_matrix(const DiffPoly& p);

/// Lagrange congruence reduction over Q(params). The transform matrix is S^T,
/// where S^T A S = diag(diagonal). Target variables are the source names with
/// a prime appended.
CanonReport lagrange_diagonalize(const PrincipalMatrix& a);

/// Searches transforms new_i = old_i + sum_{k != i} n_ik old_k (frozen
/// variables keep their row) that zero the coefficients of `eliminate`,
/// fixing one n_ik at a time from a condition affine in it. Perfect-square
/// diagonal entries of non-frozen variables are then scaled to 1. The result
/// is checked by pullback before it is returned.
/// Throws Error(InvalidTarget) for keys that are not u-linear second-order
/// terms of p or unknown frozen names, Error(NoSolution) otherwise.
CanonReport derive_reduction(const DiffPoly& p, const std::vector<DerivKey>& eliminate,
                             const std::set<std::string>& frozen);

}  // namespace pdecanon

#pragma once

#include <string>
#include <vector>

#include "pdecanon/diffpoly.hpp"

namespace pdecanon {

using Matrix = std::vector<std::vector<RatFun>>;

/// Change of independent variables new = matrix * old + offset.
///
/// Row i defines target[i] as an affine function of the source variables, so
/// a script line `x' = x - (alpha/2)*t` fills the row of x'. Invertibility is
/// not checked on construction; pullback and invert_transform reject
/// singular maps.
struct AffineTransform {
  VarSet source;
  VarSet target;
  Matrix matrix;
  std::vector<RatFun> offset;

  static AffineTransform identity(const VarSet& vars);
  /// Throws Error(DimensionMismatch) when shapes disagree with the VarSets.
  void validate() const;
};

/// Parameter polynomials that must not vanish for a transform or reduction to
/// be valid. Each entry is nonconstant and stored in primitive integer form;
/// monomial factors are split into their individual parameters.
struct DegeneracyReport {
  std::vector<MPoly> conditions;

  void add(const MPoly& p);
  void merge(const DegeneracyReport& other);
  /// True when p, up to a nonzero rational factor, is a listed condition.
  bool contains(const MPoly& p) const;
  bool empty() const noexcept { return conditions.empty(); }
};

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
RatFun determinant(Matrix a);
/// Throws Error(SingularTransform) when `a` is singular.
Matrix inverse(const Matrix& a);

/// Rewrites p (over T.source) in the target coordinates:
/// d/d old_i = sum_j T.matrix[j][i] * d/d new_j, expanded multinomially.
/// Throws Error(DimensionMismatch) or Error(SingularTransform).
DiffPoly pullback(const DiffPoly& p, const AffineTransform& t);

/// Throws Error(SingularTransform) when det is the zero function.
AffineTransform invert_transform(const AffineTransform& t);

/// second after first. Throws Error(DimensionMismatch) unless
/// first.target == second.source.
AffineTransform compose(const AffineTransform& second, const AffineTransform& first);

/// Denominators of the entries and the numerator of the determinant.
DegeneracyReport validity_conditions(const AffineTransform& t);

}  // namespace pdecanon

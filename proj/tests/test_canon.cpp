#include <gtest/gtest.h>

#include "pdecanon/canon.hpp"
#include "pdecanon/error.hpp"
#include "pdecanon/scenarios.hpp"
#include "property.hpp"

using namespace pdecanon;
using pdecanon::testing::for_cases;

namespace {

const ScenarioFiles kFiles;

RatFun rf(const std::string& text, const PdeDoc& doc) { return parse_ratfun(text, doc.params); }

std::vector<DerivKey> keys(const std::vector<std::string>& names, const VarSet& vars) {
  std::vector<DerivKey> out;
  for (const auto& n : names) out.push_back(parse_deriv_key(n, vars));
  return out;
}

ErrorKind derive_error(const DiffPoly& p, const std::vector<DerivKey>& k, const std::set<std::string>& frozen) {
  try {
    derive_reduction(p, k, frozen);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "derive_reduction succeeded";
  return ErrorKind::NoSolution;
}

Matrix diagonal_matrix(const std::vector<RatFun>& d) {
  Matrix m(d.size(), std::vector<RatFun>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

// Counts of positive, negative and zero entries.
std::array<int, 3> inertia(const std::vector<RatFun>& diagonal, const std::map<std::string, Rational>& at) {
  std::array<int, 3> out{0, 0, 0};
  for (const auto& d : diagonal) {
    const int s = sgn(d.evaluate(at));
    ++out[s > 0 ? 0 : s < 0 ? 1 : 2];
  }
  return out;
}

}  // namespace

TEST(PrincipalMatrix, MixedTermSplitsSymmetrically) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const PrincipalMatrix a = principal_matrix(eq2.lhs);
  EXPECT_EQ(a.vars, eq2.vars);
  const RatFun half_alpha = rf("alpha/2", eq2);
  EXPECT_EQ(a.entries, (Matrix{{RatFun(1), half_alpha}, {half_alpha, RatFun(1)}}));
}

TEST(PrincipalMatrix, FourVariables) {
  const PdeDoc eq8 = kFiles.pde("eq8.pde");
  const Matrix& a = principal_matrix(eq8.lhs).entries;
  const RatFun z;
  EXPECT_EQ(a, (Matrix{{RatFun(1), z, rf("alpha/2", eq8), z},
                       {z, RatFun(1), z, rf("delta/2", eq8)},
                       {rf("alpha/2", eq8), z, rf("alpha^2/4", eq8), z},
                       {z, rf("delta/2", eq8), z, z}}));
}

TEST(PrincipalMatrix, IgnoresNonlinearAndHigherOrderTerms) {
  const PdeDoc doc = parse_pde("vars t,x; eq u*u_tt + u_xxxx + u_t^2 + u_x = 0");
  EXPECT_EQ(principal_matrix(doc.lhs).entries, (Matrix{{RatFun(), RatFun()}, {RatFun(), RatFun()}}));
}

TEST(Lagrange, MixedTermEquation) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const PrincipalMatrix a = principal_matrix(eq2.lhs);
  const CanonReport r = lagrange_diagonalize(a);
  EXPECT_EQ(r.diagonal, (std::vector<RatFun>{RatFun(1), rf("1 - alpha^2/4", eq2)}));
  EXPECT_EQ(r.transform.matrix, kFiles.transform("t4.tf", eq2).matrix);
  EXPECT_EQ(r.transform.target, (VarSet{"t'", "x'"}));
  EXPECT_EQ(r.degeneracy.conditions, (std::vector<MPoly>{parse_polynomial("alpha^2 - 4", VarSet{"alpha"})}));
  ASSERT_EQ(r.normalization_notes.size(), 1U);
  EXPECT_EQ(r.normalization_notes[0].variable, "x'");
  EXPECT_EQ(r.normalization_notes[0].radicand, rf("1 - alpha^2/4", eq2));
  const Matrix& m = r.transform.matrix;
  EXPECT_EQ(multiply(multiply(m, a.entries), transpose(m)), diagonal_matrix(r.diagonal));
  EXPECT_EQ(r.reduced, diagonal_matrix(r.diagonal));
}

TEST(Lagrange, FourVariableEquation) {
  const PdeDoc eq8 = kFiles.pde("eq8.pde");
  const PrincipalMatrix a = principal_matrix(eq8.lhs);
  const CanonReport r = lagrange_diagonalize(a);
  EXPECT_EQ(r.diagonal, (std::vector<RatFun>{RatFun(1), RatFun(1), RatFun(), rf("-delta^2/4", eq8)}));
  const Matrix& m = r.transform.matrix;
  EXPECT_EQ(multiply(multiply(m, a.entries), transpose(m)), diagonal_matrix(r.diagonal));
  EXPECT_FALSE(determinant(m).is_zero());
  EXPECT_TRUE(r.degeneracy.contains(parse_polynomial("delta", VarSet{"delta"})));
}

TEST(Lagrange, ZeroDiagonalUsesPairTrick) {
  const PdeDoc doc = parse_pde("vars t,x; eq u_tx = 0");
  const PrincipalMatrix a = principal_matrix(doc.lhs);
  const CanonReport r = lagrange_diagonalize(a);
  const Matrix& m = r.transform.matrix;
  EXPECT_FALSE(determinant(m).is_zero());
  EXPECT_EQ(multiply(multiply(m, a.entries), transpose(m)), diagonal_matrix(r.diagonal));
  // hyperbolic: one positive, one negative entry
  EXPECT_EQ(inertia(r.diagonal, {}), (std::array<int, 3>{1, 1, 0}));
}

TEST(Lagrange, NormalizesPerfectSquares) {
  const PdeDoc doc = parse_pde("vars t,x; params a; eq 4*u_tt + a^2*u_xx = 0");
  const CanonReport r = lagrange_diagonalize(principal_matrix(doc.lhs));
  EXPECT_EQ(r.diagonal, (std::vector<RatFun>{RatFun(1), RatFun(1)}));
  EXPECT_TRUE(r.normalization_notes.empty());
  EXPECT_TRUE(r.degeneracy.contains(parse_polynomial("a", VarSet{"a"})));
}

TEST(DeriveReduction, MixedTermReproducesTransform) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const CanonReport r = derive_reduction(eq2.lhs, keys({"u_xt"}, eq2.vars), {});
  const AffineTransform t4 = kFiles.transform("t4.tf", eq2);
  EXPECT_EQ(r.transform.matrix, t4.matrix);
  EXPECT_EQ(r.transform.target, t4.target);
  EXPECT_EQ(r.diagonal, (std::vector<RatFun>{RatFun(1), rf("1 - alpha^2/4", eq2)}));
  EXPECT_EQ(pullback(eq2.lhs, r.transform), kFiles.pde("eq3.pde").lhs);
}

TEST(DeriveReduction, ThreeAndFourVariables) {
  const PdeDoc eq5 = kFiles.pde("eq5.pde");
  const CanonReport r5 = derive_reduction(eq5.lhs, keys({"u_tt", "u_yt"}, eq5.vars), {"x"});
  EXPECT_EQ(r5.transform.matrix, kFiles.transform("t7.tf", eq5).matrix);
  EXPECT_EQ(r5.transform.target, (VarSet{"t'", "x", "y'"}));
  EXPECT_EQ(r5.degeneracy.conditions, (std::vector<MPoly>{parse_polynomial("alpha", VarSet{"alpha"})}));

  const PdeDoc eq8 = kFiles.pde("eq8.pde");
  const CanonReport r8 = derive_reduction(eq8.lhs, keys({"u_tt", "u_yt", "u_xx"}, eq8.vars), {"z"});
  EXPECT_EQ(r8.transform.matrix, kFiles.transform("t10.tf", eq8).matrix);
  EXPECT_EQ(pullback(eq8.lhs, r8.transform), kFiles.pde("eq9.pde").lhs);
}

TEST(DeriveReduction, Errors) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  EXPECT_EQ(derive_error(eq2.lhs, keys({"u_xxxx"}, eq2.vars), {}), ErrorKind::InvalidTarget);
  EXPECT_EQ(derive_error(eq2.lhs, keys({"u_xt"}, eq2.vars), {"y"}), ErrorKind::InvalidTarget);
  const PdeDoc wave = parse_pde("vars t,x; eq u_tt + u_xx + u_tx = 0");
  EXPECT_EQ(derive_error(wave.lhs, keys({"u_tt"}, wave.vars), {"x"}), ErrorKind::NoSolution);
  const PdeDoc elliptic = parse_pde("vars t,x; eq u_tt + u_xx = 0");
  EXPECT_EQ(derive_error(elliptic.lhs, keys({"u_tt"}, elliptic.vars), {}), ErrorKind::NoSolution);
}

TEST(CanonProperty, ReducedMatrixMatchesPullback) {
  const VarSet vars{"t", "x", "y"};
  for_cases(40, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, vars, {"alpha"}, 2, 1, 6);
    const PrincipalMatrix a = principal_matrix(p);
    const CanonReport r = lagrange_diagonalize(a);
    EXPECT_EQ(principal_matrix(pullback(p, r.transform)).entries, r.reduced);
    EXPECT_EQ(r.reduced, diagonal_matrix(r.diagonal));
    EXPECT_FALSE(determinant(r.transform.matrix).is_zero());
  });
}

TEST(CanonProperty, InertiaIsStableUnderCongruence) {
  const VarSet vars{"t", "x", "y"};
  const std::vector<std::string> params{"alpha"};
  for_cases(40, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, vars, params, 2, 1, 6);
    const AffineTransform t = random_transform(rng, vars, params);
    const CanonReport direct = lagrange_diagonalize(principal_matrix(p));
    const CanonReport moved = lagrange_diagonalize(principal_matrix(pullback(p, t)));
    DegeneracyReport avoid = direct.degeneracy;
    avoid.merge(moved.degeneracy);
    avoid.merge(validity_conditions(t));
    for (int k = 0; k < 5; ++k) {
      const auto at = random_params(rng, params, avoid);
      EXPECT_EQ(inertia(direct.diagonal, at), inertia(moved.diagonal, at));
    }
  }, 1);
}

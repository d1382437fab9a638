#include <gtest/gtest.h>

#include "pdecanon/error.hpp"
#include "pdecanon/parser.hpp"
#include "pdecanon/scenarios.hpp"
#include "property.hpp"

using namespace pdecanon;
using pdecanon::testing::for_cases;

namespace {

const ScenarioFiles kFiles;

std::vector<std::string> conditions(const DegeneracyReport& r) {
  std::vector<std::string> out;
  for (const auto& c : r.conditions) out.push_back(c.to_string());
  return out;
}

}  // namespace

TEST(Pullback, MixedTermRemoval) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const PdeDoc eq3 = kFiles.pde("eq3.pde");
  const DiffPoly image = pullback(eq2.lhs, kFiles.transform("t4.tf", eq2));
  EXPECT_EQ(image.vars(), eq3.vars);
  EXPECT_EQ(image, eq3.lhs);
}

TEST(Pullback, ThreeAndFourVariables) {
  const PdeDoc eq5 = kFiles.pde("eq5.pde");
  EXPECT_EQ(pullback(eq5.lhs, kFiles.transform("t7.tf", eq5)), kFiles.pde("eq6.pde").lhs);
  const PdeDoc eq8 = kFiles.pde("eq8.pde");
  const DiffPoly eq9 = pullback(eq8.lhs, kFiles.transform("t10.tf", eq8));
  EXPECT_EQ(eq9, kFiles.pde("eq9.pde").lhs);
  EXPECT_EQ(eq9.active_variables(), (std::set<std::size_t>{1, 2, 3}));
}

TEST(Pullback, SingleDerivatives) {
  const VarSet tx{"t", "x"};
  const AffineTransform t = parse_transform("t' = 2*t + x; x' = t - x", tx);
  const auto img = [&](const std::string& key) {
    return format_diffpoly(pullback(DiffPoly::derivative_of_u(tx, parse_deriv_key(key, tx)), t));
  };
  // d/dt = 2 d/dt' + d/dx', d/dx = d/dt' - d/dx'
  EXPECT_EQ(img("u_t"), "2*u_t' + u_x'");
  EXPECT_EQ(img("u_x"), "u_t' - u_x'");
  EXPECT_EQ(img("u_tx"), "2*u_t't' - u_t'x' - u_x'x'");
  EXPECT_EQ(img("u"), "u");
}

TEST(Pullback, RejectsSingularAndMismatched) {
  const VarSet tx{"t", "x"};
  try {
    pullback(DiffPoly::unknown(tx), parse_transform("t' = t; x' = t", tx));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularTransform);
  }
  try {
    pullback(DiffPoly::unknown(VarSet{"t", "x", "y"}), parse_transform("t' = t", tx));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Invert, MixedTermTransform) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const AffineTransform inv = invert_transform(kFiles.transform("t4.tf", eq2));
  EXPECT_EQ(inv.source, (VarSet{"t'", "x'"}));
  EXPECT_EQ(inv.target, eq2.vars);
  EXPECT_EQ(format_transform(inv), "t = t'\nx = 1/2*alpha*t' + x'\n");
}

TEST(Invert, ThreeVariableTransform) {
  const PdeDoc eq5 = kFiles.pde("eq5.pde");
  const AffineTransform inv = invert_transform(kFiles.transform("t7.tf", eq5));
  EXPECT_EQ(format_transform(inv), "t = t' + y'\nx = x\ny = 1/2*alpha*y'\n");
}

TEST(Invert, SingularTransform) {
  const VarSet tx{"t", "x"};
  try {
    invert_transform(parse_transform("t' = t + x; x' = 2*t + 2*x", tx));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularTransform);
  }
}

TEST(Compose, AppliesSecondAfterFirst) {
  const VarSet tx{"t", "x"};
  const AffineTransform first = parse_transform("t' = t + 1; x' = x + t", tx);
  const AffineTransform second = parse_transform("t'' = 2*t'; x'' = x' - t'", first.target);
  const AffineTransform both = compose(second, first);
  EXPECT_EQ(both.source, tx);
  EXPECT_EQ(both.target, second.target);
  EXPECT_EQ(format_transform(both), "t'' = 2*t + 2\nx'' = x - 1\n");
  try {
    compose(first, first);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(ValidityConditions, Examples) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  EXPECT_TRUE(validity_conditions(kFiles.transform("t4.tf", eq2)).empty());
  const PdeDoc eq5 = kFiles.pde("eq5.pde");
  EXPECT_EQ(conditions(validity_conditions(kFiles.transform("t7.tf", eq5))), (std::vector<std::string>{"alpha"}));
  const PdeDoc eq8 = kFiles.pde("eq8.pde");
  EXPECT_EQ(conditions(validity_conditions(kFiles.transform("t10.tf", eq8))),
            (std::vector<std::string>{"alpha", "delta"}));
  const AffineTransform t = parse_transform("t' = t + x/(a - 1); x' = b*x", VarSet{"t", "x"}, std::vector<std::string>{"a", "b"});
  EXPECT_EQ(conditions(validity_conditions(t)), (std::vector<std::string>{"a - 1", "b"}));
}

TEST(TransformProperty, PullbackIsLinearAndMultiplicative) {
  const VarSet vars{"t", "x", "y"};
  const std::vector<std::string> params{"alpha"};
  for_cases(60, [&](std::mt19937_64& rng) {
    const AffineTransform t = random_transform(rng, vars, params);
    const DiffPoly p = random_diffpoly(rng, vars, params, 3, 2, 4);
    const DiffPoly q = random_diffpoly(rng, vars, params, 3, 2, 4);
    const RatFun c(random_rational(rng));
    EXPECT_EQ(pullback(p + q, t), pullback(p, t) + pullback(q, t));
    EXPECT_EQ(pullback(c * p, t), c * pullback(p, t));
    EXPECT_EQ(pullback(p * q, t), pullback(p, t) * pullback(q, t));
  });
}

TEST(TransformProperty, RoundTripAndFunctoriality) {
  const VarSet vars{"t", "x", "y"};
  const std::vector<std::string> params{"alpha", "beta"};
  for_cases(60, [&](std::mt19937_64& rng) {
    const AffineTransform t = random_transform(rng, vars, params);
    const DiffPoly p = random_diffpoly(rng, vars, params, 4, 2, 4);
    const DiffPoly image = pullback(p, t);
    EXPECT_EQ(image.vars(), t.target);
    EXPECT_EQ(pullback(image, invert_transform(t)), p);
    EXPECT_EQ(image.max_order(), p.max_order());

    const AffineTransform s = random_transform(rng, t.target, params);
    EXPECT_EQ(pullback(image, s), pullback(p, compose(s, t)));
    EXPECT_EQ(multiply(t.matrix, inverse(t.matrix)), identity_matrix(3));
  }, 1);
}

TEST(TransformProperty, DeterminantIsMultiplicative) {
  for_cases(60, [&](std::mt19937_64& rng) {
    const VarSet vars{"t", "x", "y", "z"};
    const AffineTransform a = random_transform(rng, vars, {"alpha"});
    const AffineTransform b = random_transform(rng, vars, {"alpha"});
    EXPECT_EQ(determinant(multiply(a.matrix, b.matrix)), determinant(a.matrix) * determinant(b.matrix));
    EXPECT_EQ(determinant(transpose(a.matrix)), determinant(a.matrix));
  }, 2);
}

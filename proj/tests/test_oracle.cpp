#include <gtest/gtest.h>

#include <cstdlib>

#include "pdecanon/error.hpp"
#include "pdecanon/scenarios.hpp"
#include "property.hpp"

using namespace pdecanon;
using pdecanon::testing::for_cases;

namespace {

const ScenarioFiles kFiles;

TestFunction fn(const std::string& text, const VarSet& vars) { return {vars, parse_polynomial(text, vars)}; }

std::vector<Rational> pt(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::map<std::string, Rational> at(std::initializer_list<std::pair<const std::string, long>> v) {
  std::map<std::string, Rational> out;
  for (const auto& [k, x] : v) out[k] = x;
  return out;
}

}  // namespace

TEST(Residual, BoussinesqOnPolynomial) {
  const PdeDoc eq1 = kFiles.pde("eq1.pde");
  // u_tt = 2, u_xx = 12, (u^2)_xx = 80, u_xxxx = 24 at (1, 1)
  const Residual r = residual_eval(eq1.lhs, fn("t^2 + x^4", eq1.vars), pt({1, 1}), at({{"beta", 1}, {"gamma", 1}}));
  EXPECT_EQ(r.value, -90);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Residual, MixedTermOnPolynomial) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  // f = t*x^3 at (2, 1): u_xx = 12, (u^2)_xx = 120, u_xt = 3
  const Residual r = residual_eval(eq2.lhs, fn("t*x^3", eq2.vars), pt({2, 1}),
                                   at({{"alpha", 3}, {"beta", 1}, {"gamma", 5}}));
  EXPECT_EQ(r.value, -99);
}

TEST(Residual, ZeroFunction) {
  const PdeDoc eq1 = kFiles.pde("eq1.pde");
  const Residual r = residual_eval(eq1.lhs, fn("0", eq1.vars), pt({3, -2}), at({{"beta", 4}, {"gamma", 7}}));
  EXPECT_EQ(r.value, 0);
}

TEST(Residual, LowDegreeFunctionWarns) {
  const PdeDoc eq1 = kFiles.pde("eq1.pde");
  const Residual r = residual_eval(eq1.lhs, fn("t", eq1.vars), pt({1, 1}), at({{"beta", 1}, {"gamma", 1}}));
  EXPECT_EQ(r.value, 0);
  ASSERT_FALSE(r.warnings.empty());
  bool mentions = false;
  for (const auto& w : r.warnings) {
    EXPECT_EQ(w.rfind("DegenerateTestFunction", 0), 0U) << w;
    if (w.find("u_xxxx") != std::string::npos) mentions = true;
  }
  EXPECT_TRUE(mentions);
}

TEST(Residual, Errors) {
  const PdeDoc eq1 = kFiles.pde("eq1.pde");
  try {
    residual_eval(eq1.lhs, fn("t", eq1.vars), pt({1}), at({{"beta", 1}, {"gamma", 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  try {
    residual_eval(eq1.lhs, fn("t", eq1.vars), pt({1, 1}), at({{"beta", 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingParam);
  }
  const PdeDoc pole = parse_pde("vars t,x; params a; eq 1/(a - 1)*u_tt = 0");
  try {
    residual_eval(pole.lhs, fn("t^2", pole.vars), pt({1, 1}), at({{"a", 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleAtPoint);
  }
}

TEST(Consistency, MixedTermTransform) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const ConsistencyCheck c = pullback_consistency_check(eq2.lhs, kFiles.transform("t4.tf", eq2),
                                                        fn("t^2 + x^4", eq2.vars), pt({1, 1}),
                                                        at({{"alpha", 2}, {"beta", 1}, {"gamma", 1}}));
  EXPECT_TRUE(c.consistent);
  EXPECT_EQ(c.original, c.transformed);
  // x' = x - alpha/2 * t = 0 at (1, 1) with alpha = 2
  EXPECT_EQ(c.image_point, pt({1, 0}));
}

TEST(Consistency, FourVariableTransform) {
  const PdeDoc eq8 = kFiles.pde("eq8.pde");
  std::mt19937_64 rng(pdecanon::testing::base_seed());
  const TestFunction f = random_test_function(rng, eq8.vars, 5, 8);
  const ConsistencyCheck c = pullback_consistency_check(eq8.lhs, kFiles.transform("t10.tf", eq8), f,
                                                        random_point(rng, 4),
                                                        at({{"alpha", 3}, {"beta", 2}, {"gamma", 1}, {"delta", 5}}));
  EXPECT_TRUE(c.consistent);
}

TEST(Consistency, IdentityTransform) {
  const PdeDoc eq1 = kFiles.pde("eq1.pde");
  const ConsistencyCheck c = pullback_consistency_check(eq1.lhs, AffineTransform::identity(eq1.vars),
                                                        fn("t^3*x + x^5", eq1.vars), pt({2, -1}),
                                                        at({{"beta", 3}, {"gamma", -2}}));
  EXPECT_TRUE(c.consistent);
  EXPECT_EQ(c.image_point, pt({2, -1}));
}

TEST(Consistency, DetectsAWrongImage) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const AffineTransform t = parse_transform("t' = t; x' = x + t", eq2.vars);
  const DiffPoly wrong = pullback(eq2.lhs, kFiles.transform("t4.tf", eq2));
  const auto params = at({{"alpha", 3}, {"beta", 1}, {"gamma", 1}});
  const TestFunction f = fn("t^2*x + x^3", eq2.vars);
  const Residual before = residual_eval(eq2.lhs, f, pt({1, 2}), params);
  const ConsistencyCheck good = pullback_consistency_check(eq2.lhs, t, f, pt({1, 2}), params);
  EXPECT_TRUE(good.consistent);
  // g = f o t^-1; the image under t4 does not reproduce the residual.
  const TestFunction g{t.target, parse_polynomial("t'^2*(x' - t') + (x' - t')^3", t.target)};
  const Residual after = residual_eval(wrong.relabeled(t.target), g, good.image_point, params);
  EXPECT_NE(after.value, before.value);
}

TEST(Seed, FlagThenEnvironmentThenDefault) {
  EXPECT_EQ(resolve_seed(7), 7U);
  const char* saved = std::getenv("PDECANON_SEED");
  const std::string keep = saved ? saved : "";
  setenv("PDECANON_SEED", "12345", 1);
  EXPECT_EQ(resolve_seed(std::nullopt), 12345U);
  EXPECT_EQ(resolve_seed(9), 9U);
  unsetenv("PDECANON_SEED");
  EXPECT_EQ(resolve_seed(std::nullopt), 20240601U);
  if (saved) setenv("PDECANON_SEED", keep.c_str(), 1);
}

TEST(RandomParams, AvoidsConditions) {
  std::mt19937_64 rng(1);
  DegeneracyReport avoid;
  avoid.add(parse_polynomial("alpha - 1", VarSet{"alpha"}));
  for (int i = 0; i < 200; ++i) EXPECT_NE(random_params(rng, {"alpha"}, avoid).at("alpha"), 1);
  DegeneracyReport impossible;
  impossible.add(parse_polynomial("delta", VarSet{"delta"}));
  try {
    random_params(rng, {"alpha"}, impossible, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSolution);
  }
}

TEST(OracleProperty, PullbackAgreesWithSubstitution) {
  const VarSet vars{"t", "x", "y"};
  const std::vector<std::string> params{"alpha", "beta"};
  for_cases(100, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, vars, params, 4, 2, 4);
    const AffineTransform t = random_transform(rng, vars, params);
    DegeneracyReport avoid = validity_conditions(t);
    for (const auto& [m, c] : p.terms()) avoid.add(c.den());
    const auto values = random_params(rng, params, avoid);
    const TestFunction f = random_test_function(rng, vars, p.max_order() + 1, 6);
    const ConsistencyCheck c = pullback_consistency_check(p, t, f, random_point(rng, 3), values);
    EXPECT_TRUE(c.consistent) << c.original << " vs " << c.transformed;
  });
}

TEST(OracleProperty, ResidualIsLinear) {
  const VarSet vars{"t", "x"};
  const std::vector<std::string> params{"alpha"};
  for_cases(100, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, vars, params, 3, 3, 4);
    const DiffPoly q = random_diffpoly(rng, vars, params, 3, 3, 4);
    const auto values = random_params(rng, params);
    const TestFunction f = random_test_function(rng, vars, 4, 5);
    const auto point = random_point(rng, 2);
    EXPECT_EQ(residual_eval(p + q, f, point, values).value,
              residual_eval(p, f, point, values).value + residual_eval(q, f, point, values).value);
  }, 1);
}

#include <gtest/gtest.h>

#include "pdecanon/error.hpp"
#include "pdecanon/parser.hpp"
#include "property.hpp"

using namespace pdecanon;
using pdecanon::testing::for_cases;

namespace {

const VarSet kTX{"t", "x"};

DiffPoly eq(const std::string& body, const std::string& vars = "t,x", const std::string& params = "alpha,beta,gamma") {
  return parse_pde("vars " + vars + "; params " + params + "; eq " + body + " = 0").lhs;
}

DerivKey key(const std::string& text, const VarSet& vars = kTX) { return parse_deriv_key(text, vars); }

}  // namespace

TEST(DerivKey, OrderAndTotals) {
  EXPECT_TRUE(key("u_tt") < key("u_tx"));
  EXPECT_TRUE(key("u_tx") < key("u_xx"));
  EXPECT_TRUE(key("u_xx") < key("u_ttt"));
  EXPECT_TRUE(key("u") < key("u_x"));
  EXPECT_EQ(key("u_xt"), key("u_tx"));
  EXPECT_EQ(key("u_txx").total(), 3U);
  EXPECT_TRUE(is_second_order(key("u_tx")));
  EXPECT_FALSE(is_second_order(key("u_x")));
}

TEST(DiffPoly, ExpandTotalDerivative) {
  const VarSet vars{"x"};
  const Expr u2 = Expr::power(Expr::u(DerivKey::zero(1)), 2);
  EXPECT_EQ(format_diffpoly(expand_total_derivative(u2, DerivKey::of(1, {0}), vars)), "2*u*u_x");
  EXPECT_EQ(format_diffpoly(expand_total_derivative(u2, DerivKey::of(1, {0, 0}), vars)), "2*u*u_xx + 2*u_x^2");
  const Expr uux = Expr::product(Expr::u(DerivKey::zero(1)), Expr::u(DerivKey::of(1, {0})));
  EXPECT_EQ(format_diffpoly(expand_total_derivative(uux, DerivKey::of(1, {0}), vars)), "u*u_xx + u_x^2");
}

TEST(DiffPoly, ExpandRejectsDivisionByU) {
  const VarSet vars{"x"};
  const Expr q = Expr::quotient(Expr::num(1), Expr::u(DerivKey::zero(1)));
  try {
    to_diffpoly(q, vars);
    FAIL() << "division by u accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedExpression);
  }
}

TEST(DiffPoly, NormalForm) {
  EXPECT_EQ(format_diffpoly(eq("u_tt + u_tt")), "2*u_tt");
  EXPECT_TRUE(eq("u_xt - u_tx").is_zero());
  const DiffPoly a = eq("u_t't' + (1 - alpha^2/4)*u_x'x' - beta*(u^2)_x'x' - gamma*u_x'x'x'x'", "t',x'");
  const DiffPoly b = eq("- gamma*u_x'x'x'x' - 2*beta*u_x'^2 + u_x'x' - 2*beta*u*u_x'x' - alpha^2/4*u_x'x' + u_t't'", "t',x'");
  EXPECT_EQ(a, b);
  EXPECT_EQ(normal_form(a), a);
  EXPECT_EQ(normal_form(normal_form(a)), normal_form(a));
}

TEST(DiffPoly, SubstParams) {
  const DiffPoly eq3 = eq("u_t't' + (1 - alpha^2/4)*u_x'x' - beta*(u^2)_x'x' - gamma*u_x'x'x'x'", "t',x'");
  const DiffPoly at2 = subst_params(eq3, {{"alpha", RatFun(2)}});
  EXPECT_EQ(at2, eq("u_t't' - beta*(u^2)_x'x' - gamma*u_x'x'x'x'", "t',x'"));
  const DiffPoly at65 = subst_params(eq3, {{"alpha", RatFun(make_rational(6, 5))}});
  EXPECT_EQ(at65.coefficient(DiffMonomial::of(key("u_x'x'", VarSet{"t'", "x'"}))), RatFun(make_rational(16, 25)));
  EXPECT_EQ(subst_params(eq3, {}), eq3);
  try {
    subst_params(eq("1/(alpha - 1)*u_t"), {{"alpha", RatFun(1)}});
    FAIL() << "pole not detected";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleAtPoint);
  }
}

TEST(DiffPoly, ScaleDependent) {
  const RatFun k = RatFun::param("kappa");
  EXPECT_EQ(format_diffpoly(scale_dependent(eq("u_tt", "t,x", "kappa"), k)), "kappa*u_tt");
  EXPECT_EQ(format_diffpoly(scale_dependent(eq("u*u_xx", "t,x", "kappa"), k)), "kappa^2*u*u_xx");
  try {
    scale_dependent(eq("u_tt"), RatFun());
    FAIL() << "zero scale accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroScale);
  }
}

TEST(DiffPoly, MixingVarSetsIsRejected) {
  try {
    auto sum = eq("u_tt") + eq("u_yy", "t,y");
    FAIL() << "mixed VarSets accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VarSetMismatch);
  }
}

TEST(DiffPoly, ActiveVariables) {
  const DiffPoly p = eq("u_y'y' - beta*(u^2)_x'x' - gamma*u_x'x'x'x' + alpha*u_x'z", "t',x',y',z");
  EXPECT_EQ(p.active_variables(), (std::set<std::size_t>{1, 2, 3}));
  EXPECT_EQ(p.max_order(), 4U);
  EXPECT_EQ(p.params(), (std::set<std::string>{"alpha", "beta", "gamma"}));
}

TEST(DiffPolyProperty, RingLaws) {
  const std::vector<std::string> params{"alpha", "beta"};
  for_cases(100, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, kTX, params, 3, 2, 4);
    const DiffPoly q = random_diffpoly(rng, kTX, params, 3, 2, 4);
    const DiffPoly r = random_diffpoly(rng, kTX, params, 2, 2, 3);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(normal_form(p + q), normal_form(normal_form(p) + normal_form(q)));
  });
}

TEST(DiffPolyProperty, TotalDerivativesCommute) {
  for_cases(100, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, kTX, {"alpha"}, 2, 3, 4);
    const DiffPoly xt = p.total_derivative(1).total_derivative(0);
    const DiffPoly tx = p.total_derivative(0).total_derivative(1);
    EXPECT_EQ(xt, tx);
    EXPECT_EQ(xt, p.total_derivative(key("u_tx")));
    // Leibniz rule.
    const DiffPoly q = random_diffpoly(rng, kTX, {"alpha"}, 2, 2, 3);
    EXPECT_EQ((p * q).total_derivative(1), p.total_derivative(1) * q + p * q.total_derivative(1));
  }, 1);
}

TEST(DiffPolyProperty, ScalingLaws) {
  for_cases(100, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, kTX, {"alpha"}, 3, 3, 5);
    const RatFun a(random_rational(rng));
    const RatFun b = RatFun(random_rational(rng)) * RatFun::param("alpha");
    EXPECT_EQ(scale_dependent(p, RatFun(1)), p);
    EXPECT_EQ(scale_dependent(scale_dependent(p, a), b), scale_dependent(p, a * b));
    const DiffPoly scaled = scale_dependent(p, b);
    for (const auto& [m, c] : scaled.terms())
      if (m.degree() == 1) EXPECT_EQ(c, p.coefficient(m) * b);
  }, 2);
}

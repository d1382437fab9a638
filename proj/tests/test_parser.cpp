#include <gtest/gtest.h>

#include "pdecanon/error.hpp"
#include "pdecanon/parser.hpp"
#include "pdecanon/scenarios.hpp"
#include "property.hpp"

using namespace pdecanon;
using pdecanon::testing::for_cases;

namespace {

ErrorKind parse_error(const std::string& text) {
  try {
    parse_pde(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::SyntaxError;
}

ErrorKind transform_error(const std::string& text, const VarSet& vars, std::vector<std::string> params) {
  try {
    parse_transform(text, vars, params);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::SyntaxError;
}

const ScenarioFiles kFiles;

}  // namespace

TEST(ParsePde, ExpandsAndPrintsBoussinesq) {
  const PdeDoc doc = kFiles.pde("eq1.pde");
  EXPECT_EQ(doc.vars, (VarSet{"t", "x"}));
  EXPECT_EQ(doc.params, (std::vector<std::string>{"beta", "gamma"}));
  EXPECT_EQ(print_canonical(doc), "u_tt + u_xx - 2*beta*u*u_xx - 2*beta*u_x^2 - gamma*u_xxxx = 0");
}

TEST(ParsePde, PrintsMixedAndPrimedTerms) {
  EXPECT_EQ(print_canonical(kFiles.pde("eq3.pde")),
            "u_t't' - (1/4*alpha^2 - 1)*u_x'x' - 2*beta*u*u_x'x' - 2*beta*u_x'^2 - gamma*u_x'x'x'x' = 0");
  EXPECT_EQ(format_diffpoly(kFiles.pde("eq2.pde").lhs),
            "u_tt + alpha*u_tx + u_xx - 2*beta*u*u_xx - 2*beta*u_x^2 - gamma*u_xxxx");
}

TEST(ParsePde, ZeroEquation) {
  const PdeDoc doc = parse_pde("vars t,x; eq u_tx - u_xt = 0");
  EXPECT_TRUE(doc.lhs.is_zero());
  EXPECT_EQ(print_canonical(doc), "0 = 0");
}

TEST(ParsePde, ExplicitDerivativeNotation) {
  const PdeDoc a = parse_pde("vars tau,x; params beta; eq D[u,{tau,2}] - beta*(u^2)_xx = 0");
  EXPECT_EQ(print_canonical(a), "D[u,{tau,2}] - 2*beta*u*u_xx - 2*beta*u_x^2 = 0");
  const PdeDoc b = parse_pde("vars t,x; eq D[u,{x,1},{t,1}] = 0");
  EXPECT_EQ(print_canonical(b), "u_tx = 0");
  EXPECT_EQ(parse_error("vars t,x; eq D[u^2,{x,2}] = 0"), ErrorKind::SyntaxError);
  EXPECT_EQ(format_diffpoly(a.lhs, Notation::Explicit),
            "D[u,{tau,2}] - 2*beta*u*D[u,{x,2}] - 2*beta*D[u,{x,1}]^2");
}

TEST(ParsePde, CommentsAndWhitespace) {
  const PdeDoc doc = parse_pde("# heading\nvars t,x;   # vars\nparams a;\neq u_tt\n  - a*u_xx = 0\n");
  EXPECT_EQ(print_canonical(doc), "u_tt - a*u_xx = 0");
}

TEST(ParsePde, Errors) {
  EXPECT_EQ(parse_error("vars t,x; params beta; eq u_tt + w*u_xx = 0"), ErrorKind::UndeclaredIdentifier);
  EXPECT_EQ(parse_error("vars t,x; eq u_yy = 0"), ErrorKind::UndeclaredIdentifier);
  EXPECT_EQ(parse_error("vars t,x; eq u_tt + = 0"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("vars t,x; eq u_tt"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("vars t,x; eq u_tt + x*u_xx = 0"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("vars t,x; eq u_tt + 1/u = 0"), ErrorKind::NonPolynomialInU);
  EXPECT_EQ(parse_error("vars t,x; eq u^(-1) = 0"), ErrorKind::SyntaxError);
  EXPECT_EQ(parse_error("vars t,t; eq u_tt = 0"), ErrorKind::InvalidDeclaration);
}

TEST(ParseTransform, MixedTermTransform) {
  const PdeDoc eq2 = kFiles.pde("eq2.pde");
  const AffineTransform t = kFiles.transform("t4.tf", eq2);
  EXPECT_EQ(t.source, (VarSet{"t", "x"}));
  EXPECT_EQ(t.target, (VarSet{"t'", "x'"}));
  const RatFun half_alpha = parse_ratfun("alpha/2", eq2.params);
  EXPECT_EQ(t.matrix, (Matrix{{RatFun(1), RatFun()}, {-half_alpha, RatFun(1)}}));
  EXPECT_EQ(t.offset, (std::vector<RatFun>{RatFun(), RatFun()}));
  EXPECT_EQ(format_transform(t), "t' = t\nx' = -1/2*alpha*t + x\n");
}

TEST(ParseTransform, UnlistedVariablesKeepTheirNames) {
  const PdeDoc eq5 = kFiles.pde("eq5.pde");
  const AffineTransform t = kFiles.transform("t7.tf", eq5);
  EXPECT_EQ(t.target, (VarSet{"t'", "x", "y'"}));
  EXPECT_EQ(t.matrix[1], (std::vector<RatFun>{RatFun(), RatFun(1), RatFun()}));
  const PdeDoc eq8 = kFiles.pde("eq8.pde");
  const AffineTransform t10 = kFiles.transform("t10.tf", eq8);
  EXPECT_EQ(t10.target, (VarSet{"t'", "x'", "y'", "z"}));
  EXPECT_EQ(t10.matrix[1][3], parse_ratfun("-1/delta", eq8.params));
  EXPECT_EQ(t10.matrix[3], (std::vector<RatFun>{RatFun(), RatFun(), RatFun(), RatFun(1)}));
  const AffineTransform id = kFiles.transform("identity.tf", eq8);
  EXPECT_EQ(id.matrix, identity_matrix(4));
  EXPECT_EQ(id.target, eq8.vars);
}

TEST(ParseTransform, OffsetsHeadersAndSeparators) {
  const VarSet tx{"t", "x"};
  const AffineTransform t = parse_transform("params c; t' = t + 1; x' = c*x - 3/2", tx);
  EXPECT_EQ(t.offset, (std::vector<RatFun>{RatFun(1), RatFun(make_rational(-3, 2))}));
  EXPECT_EQ(t.matrix[1][1], RatFun::param("c"));
  const AffineTransform s = parse_transform("vars t,x\nt' = t\nx' = t", tx);
  EXPECT_TRUE(determinant(s.matrix).is_zero());
}

TEST(ParseTransform, Errors) {
  const VarSet tx{"t", "x"};
  EXPECT_EQ(transform_error("x' = x\nx' = t", tx, {}), ErrorKind::DuplicateDefinition);
  EXPECT_EQ(transform_error("x' = x*t", tx, {}), ErrorKind::NonAffineRightSide);
  EXPECT_EQ(transform_error("x' = x^2", tx, {}), ErrorKind::NonAffineRightSide);
  EXPECT_EQ(transform_error("x' = x/t", tx, {}), ErrorKind::NonAffineRightSide);
  EXPECT_EQ(transform_error("x' = x + w", tx, {}), ErrorKind::UndeclaredIdentifier);
  EXPECT_EQ(transform_error("x' = x + t +", tx, {}), ErrorKind::SyntaxError);
  EXPECT_EQ(transform_error("vars t,x,y\nx' = x", tx, {}), ErrorKind::DimensionMismatch);
  EXPECT_EQ(transform_error("x' = x / (a - a)", tx, {"a"}), ErrorKind::DivisionByZero);
}

TEST(ParseHelpers, KeysCoefficientsPolynomials) {
  const VarSet tx{"t", "x"};
  EXPECT_EQ(parse_deriv_key("u_xt", tx), DerivKey::of(2, {0, 1}));
  EXPECT_EQ(parse_deriv_key("D[u,{x,2}]", tx), DerivKey::of(2, {1, 1}));
  EXPECT_EQ(parse_deriv_key("u", tx), DerivKey::zero(2));
  const std::vector<std::string> params{"beta", "delta"};
  EXPECT_EQ(parse_ratfun("-3*delta/(2*beta)", params).to_string(), "-3/2*delta/beta");
  EXPECT_EQ(parse_polynomial("t^2 + x^4", tx).to_string(), "x^4 + t^2");
}

TEST(ParseProperty, PrintedDocumentsParseBack) {
  const VarSet vars{"t", "x", "y"};
  const std::vector<std::string> params{"alpha", "beta"};
  for_cases(100, [&](std::mt19937_64& rng) {
    const DiffPoly p = random_diffpoly(rng, vars, params, 4, 3, 5);
    const PdeDoc doc(vars, params, p);
    for (Notation n : {Notation::Subscript, Notation::Explicit}) {
      const std::string text = print_document(doc, n);
      const PdeDoc back = parse_pde(text);
      EXPECT_EQ(back.lhs, p) << text;
      EXPECT_EQ(print_document(back, n), text);
    }
  });
}

TEST(ParseProperty, TransformScriptsParseBack) {
  const VarSet vars{"t", "x", "y"};
  const std::vector<std::string> params{"alpha", "delta"};
  for_cases(100, [&](std::mt19937_64& rng) {
    const AffineTransform t = random_transform(rng, vars, params);
    const std::string script = format_transform(t);
    const AffineTransform back = parse_transform(script, vars, params);
    EXPECT_EQ(back.target, t.target) << script;
    EXPECT_EQ(back.matrix, t.matrix) << script;
    EXPECT_EQ(back.offset, t.offset) << script;
  }, 1);
}

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdecanon/diffpoly.hpp"
#include "pdecanon/expr.hpp"
#include "pdecanon/transform.hpp"

namespace pdecanon {

/// One equation `lhs = 0` with its declarations.
struct PdeDoc {
  VarSet vars;
  std::vector<std::string> params;
  DiffPoly lhs;
  std::string name;

  PdeDoc(VarSet v, std::vector<std::string> p, DiffPoly l, std::string n = {})
      : vars(std::move(v)), params(std::move(p)), lhs(std::move(l)), name(std::move(n)) {}
};

/// Parses
///
///     vars t,x; params beta,gamma;
///     eq u_tt + u_xx - beta*(u^2)_xx - gamma*u_xxxx = 0
///
/// Subscripts are runs of single-letter variables with optional primes
/// (u_t'x'); longer names need D[u, {tau,2}]. `#` starts a line comment.
/// Throws SyntaxError, Error(UndeclaredIdentifier), Error(NonPolynomialInU)
/// or Error(InvalidDeclaration).
PdeDoc parse_pde(std::string_view text, std::string name = {});

/// Parses lines `x' = x - (alpha/2)*t`, separated by newlines or `;`.
/// Variables without a line map to themselves. Identifiers other than
/// source variables must be in `params` or declared in an optional
/// `params a,b;` header. Throws SyntaxError, Error(NonAffineRightSide),
/// Error(DuplicateDefinition), Error(UndeclaredIdentifier).
AffineTransform parse_transform(std::string_view text, const VarSet& source,
                                std::span<const std::string> params = {});

/// `u_xt` or `D[u,{x,1},{t,1}]` over `vars`.
DerivKey parse_deriv_key(std::string_view text, const VarSet& vars);

/// Coefficient expression in the declared parameters, e.g. "-3*delta/(2*beta)".
RatFun parse_ratfun(std::string_view text, std::span<const std::string> params);

/// Polynomial in the variables with rational coefficients, e.g. "t^2 + x^4".
MPoly parse_polynomial(std::string_view text, const VarSet& vars);

// ---------------------------------------------------------------- printing

enum class Notation {
  Subscript,  // u_tx, falling back to D[...] for multi-letter names
  Explicit,   // always D[u,{t,1},{x,1}]
};

std::string format_key(const DerivKey& key, const VarSet& vars, Notation notation);
std::string format_monomial(const DiffMonomial& m, const VarSet& vars, Notation notation);
/// Left side only, e.g. "u_tt + u_xx - 2*beta*u*u_xx".
std::string format_diffpoly(const DiffPoly& p, Notation notation = Notation::Subscript);

/// "<lhs> = 0", terms in normal-form order.
std::string print_canonical(const PdeDoc& doc, Notation notation = Notation::Subscript);

/// Complete document that parse_pde reads back to the same normal form.
std::string print_document(const PdeDoc& doc, Notation notation = Notation::Subscript);

/// Script lines, one per target variable, readable by parse_transform.
std::string format_transform(const AffineTransform& t);

}  // namespace pdecanon

#include <sstream>

#include "pdecanon/parser.hpp"

namespace pdecanon {

namespace {

bool single_letter(const std::string& name) {
  if (name.empty()) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (name[i] != '\'') return false;
  return true;
}

/// Appends `c*body` to out with the sign pulled in front; an empty body means
/// a constant term.
void append_term(std::string& out, const RatFun& c, const std::string& body) {
  const bool negative = sgn(c.num().leading_coefficient()) < 0;
  const RatFun magnitude = negative ? -c : c;
  std::string coef;
  if (!magnitude.is_one() || body.empty()) {
    coef = magnitude.to_string();
    if (magnitude.den().is_constant() && magnitude.num().size() > 1 && !body.empty())
      coef = "(" + coef + ")";
  }
  std::string text = body.empty() ? coef : (coef.empty() ? body : coef + "*" + body);
  if (out.empty())
    out = (negative ? "-" : "") + text;
  else
    out += (negative ? " - " : " + ") + text;
}

}  // namespace

std::string format_key(const DerivKey& key, const VarSet& vars, Notation notation) {
  if (key.total() == 0) return "u";
  bool subscript = notation == Notation::Subscript;
  for (std::size_t i = 0; i < vars.size() && subscript; ++i)
    if (key.orders[i] > 0 && !single_letter(vars[i])) subscript = false;
  std::string out;
  if (subscript) {
    out = "u_";
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (unsigned k = 0; k < key.orders[i]; ++k) out += vars[i];
    return out;
  }
  out = "D[u";
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (key.orders[i] > 0) out += ",{" + vars[i] + "," + std::to_string(key.orders[i]) + "}";
  return out + "]";
}

std::string format_monomial(const DiffMonomial& m, const VarSet& vars, Notation notation) {
  if (m.is_constant()) return "1";
  std::string out;
  for (const auto& [key, e] : m.factors()) {
    if (!out.empty()) out += "*";
    out += format_key(key, vars, notation);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string format_diffpoly(const DiffPoly& p, Notation notation) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms())
    append_term(out, c, m.is_constant() ? std::string() : format_monomial(m, p.vars(), notation));
  return out;
}

std::string print_canonical(const PdeDoc& doc, Notation notation) {
  return format_diffpoly(doc.lhs, notation) + " = 0";
}

std::string print_document(const PdeDoc& doc, Notation notation) {
  std::ostringstream os;
  os << "vars " << doc.vars.to_string() << ";\n";
  if (!doc.params.empty()) {
    os << "params ";
    for (std::size_t i = 0; i < doc.params.size(); ++i) os << (i ? "," : "") << doc.params[i];
    os << ";\n";
  }
  os << "eq " << print_canonical(doc, notation) << "\n";
  return os.str();
}

std::string format_transform(const AffineTransform& t) {
  std::string out;
  for (std::size_t i = 0; i < t.target.size(); ++i) {
    std::string rhs;
    for (std::size_t j = 0; j < t.source.size(); ++j)
      if (!t.matrix[i][j].is_zero()) append_term(rhs, t.matrix[i][j], t.source[j]);
    if (!t.offset[i].is_zero()) append_term(rhs, t.offset[i], {});
    if (rhs.empty()) rhs = "0";
    out += t.target[i] + " = " + rhs + "\n";
  }
  return out;
}

}  // namespace pdecanon

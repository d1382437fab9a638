#include <cctype>
#include <optional>
#include <set>

#include "pdecanon/error.hpp"
#include "pdecanon/parser.hpp"

namespace pdecanon {

namespace {

// ------------------------------------------------------------------- lexer

struct Token {
  enum class Type { Ident, Integer, Symbol, Newline, End };
  Type type = Type::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  std::string describe() const {
    switch (type) {
      case Type::End: return "end of input";
      case Type::Newline: return "end of line";
      default: return "'" + text + "'";
    }
  }
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  Lexer(std::string_view src, bool newline_tokens) : src_(src), newline_tokens_(newline_tokens) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= src_.size()) return tok;
    char c = src_[pos_];
    if (c == '\n') {
      take();
      tok.type = Token::Type::Newline;
      tok.text = "\\n";
    } else if (is_ident_start(c)) {
      tok.type = Token::Type::Ident;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) tok.text += take();
      while (pos_ < src_.size() && src_[pos_] == '\'') tok.text += take();
    } else if (is_digit(c)) {
      tok.type = Token::Type::Integer;
      while (pos_ < src_.size() && is_digit(src_[pos_])) tok.text += take();
    } else {
      tok.type = Token::Type::Symbol;
      tok.text = std::string(1, take());
      if (std::string_view("+-*/^(),;={}[]_").find(c) == std::string_view::npos)
        throw SyntaxError(tok.line, tok.column, "a token", tok.describe());
    }
    return tok;
  }

  /// Raw subscript text right after '_': letters, each with optional primes.
  std::string subscript() {
    std::string s;
    while (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) ||
                                  (!s.empty() && src_[pos_] == '\'')))
      s += take();
    return s;
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (c == '\n' && newline_tokens_) {
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  bool newline_tokens_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// ------------------------------------------------------------------ parser

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names{"u", "D", "vars", "params", "eq"};
  return names;
}

enum class Mode {
  Pde,          // u, derivatives and parameters
  Transform,    // variables and parameters
  Coefficient,  // parameters only
  Polynomial,   // variables only
};

class Parser {
 public:
  Parser(std::string_view text, Mode mode, bool newline_tokens)
      : lex_(text, newline_tokens), mode_(mode) {
    advance();
  }

  void set_vars(const VarSet& vars) { vars_ = vars; }
  void add_params(std::span<const std::string> params) {
    for (const auto& p : params) params_.insert(p);
  }

  const Token& current() const { return cur_; }

  void advance() { cur_ = lex_.next(); }

  bool at_symbol(std::string_view s) const {
    return cur_.type == Token::Type::Symbol && cur_.text == s;
  }
  bool at_ident(std::string_view s) const {
    return cur_.type == Token::Type::Ident && cur_.text == s;
  }
  bool at(Token::Type type) const { return cur_.type == type; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(cur_.line, cur_.column, expected, cur_.describe());
  }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("'" + std::string(s) + "'");
    advance();
  }

  void expect_keyword(std::string_view s) {
    if (!at_ident(s)) fail("'" + std::string(s) + "'");
    advance();
  }

  void expect_end() {
    if (!at(Token::Type::End)) fail("end of input");
  }

  std::string expect_ident() {
    if (!at(Token::Type::Ident)) fail("an identifier");
    std::string s = cur_.text;
    advance();
    return s;
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> names{expect_ident()};
    while (at_symbol(",")) {
      advance();
      names.push_back(expect_ident());
    }
    for (const auto& n : names)
      if (reserved_names().count(n))
        throw Error(ErrorKind::InvalidDeclaration, "'" + n + "' is reserved");
    return names;
  }

  // expr := term (("+"|"-") term)*
  Expr expr() {
    Expr e = term();
    while (at_symbol("+") || at_symbol("-")) {
      bool minus = at_symbol("-");
      advance();
      Expr rhs = term();
      e = Expr::sum(std::move(e), minus ? Expr::negate(std::move(rhs)) : std::move(rhs));
    }
    return e;
  }

  // term := factor (("*"|"/") factor)*
  Expr term() {
    Expr e = factor();
    while (at_symbol("*") || at_symbol("/")) {
      bool divide = at_symbol("/");
      advance();
      Expr rhs = factor();
      e = divide ? Expr::quotient(std::move(e), std::move(rhs))
                 : Expr::product(std::move(e), std::move(rhs));
    }
    return e;
  }

  // factor := ("-"|"+") factor | base ["^" ["-"] integer]
  Expr factor() {
    if (at_symbol("-")) {
      advance();
      return Expr::negate(factor());
    }
    if (at_symbol("+")) {
      advance();
      return factor();
    }
    Expr b = base();
    if (at_symbol("^")) {
      advance();
      bool negative = false;
      if (at_symbol("-")) {
        negative = true;
        advance();
      }
      if (!at(Token::Type::Integer)) fail("an integer exponent");
      long e = std::stol(cur_.text);
      advance();
      b = Expr::power(std::move(b), negative ? -e : e);
    }
    return b;
  }

  Expr base() {
    if (at(Token::Type::Integer)) {
      Rational value = parse_rational(cur_.text);
      advance();
      return Expr::num(value);
    }
    if (at_symbol("(")) {
      advance();
      Expr inner = expr();
      expect_symbol(")");
      if (at_symbol("_")) {
        require_u_allowed();
        return Expr::derivative(std::move(inner), subscript_key());
      }
      return inner;
    }
    if (at_ident("D") && mode_ == Mode::Pde) {
      advance();
      return Expr::u(explicit_key());
    }
    if (at_ident("u") && mode_ == Mode::Pde) {
      advance();
      DerivKey key = DerivKey::zero(vars_.size());
      if (at_symbol("_")) key = subscript_key();
      return Expr::u(std::move(key));
    }
    if (at(Token::Type::Ident)) return identifier();
    fail("a number, identifier, u or '('");
  }

  void require_u_allowed() const {
    if (mode_ != Mode::Pde) fail("an expression without derivatives");
  }

  Expr identifier() {
    const Token tok = cur_;
    advance();
    const bool is_var = vars_.size() > 0 && vars_.index_of(tok.text).has_value();
    const bool is_param = params_.count(tok.text) > 0;
    if (is_var) {
      if (mode_ == Mode::Transform || mode_ == Mode::Polynomial) return Expr::var(tok.text);
      throw SyntaxError(tok.line, tok.column, "a parameter, number or derivative of u",
                        "independent variable '" + tok.text + "'");
    }
    if (is_param && mode_ != Mode::Polynomial) return Expr::param(tok.text);
    if (tok.text == "u" || tok.text == "D")
      throw SyntaxError(tok.line, tok.column, "an expression without u", "'" + tok.text + "'");
    throw Error(ErrorKind::UndeclaredIdentifier, tok.text + " (line " + std::to_string(tok.line) +
                                                     ", column " + std::to_string(tok.column) +
                                                     ")");
  }

  /// Called with the current token at '_'.
  DerivKey subscript_key() {
    const std::size_t line = lex_.line();
    const std::size_t column = lex_.column();
    std::string raw = lex_.subscript();
    if (raw.empty()) throw SyntaxError(line, column, "variable letters after '_'", "nothing");
    DerivKey key = DerivKey::zero(vars_.size());
    for (std::size_t i = 0; i < raw.size();) {
      std::string name(1, raw[i++]);
      while (i < raw.size() && raw[i] == '\'') name += raw[i++];
      auto idx = vars_.index_of(name);
      if (!idx) throw Error(ErrorKind::UndeclaredIdentifier, name + " (in subscript '_" + raw + "')");
      ++key.orders[*idx];
    }
    advance();
    return key;
  }

  /// D[u, {x,2}, {t,1}] with the current token just after 'D'.
  DerivKey explicit_key() {
    expect_symbol("[");
    if (!at_ident("u")) fail("'u'");
    advance();
    DerivKey key = DerivKey::zero(vars_.size());
    if (!at_symbol(",")) fail("','");
    while (at_symbol(",")) {
      advance();
      expect_symbol("{");
      const Token name_tok = cur_;
      std::string name = expect_ident();
      auto idx = vars_.index_of(name);
      if (!idx)
        throw Error(ErrorKind::UndeclaredIdentifier,
                    name + " (line " + std::to_string(name_tok.line) + ")");
      expect_symbol(",");
      if (!at(Token::Type::Integer)) fail("a derivative order");
      key.orders[*idx] += static_cast<unsigned>(std::stoul(cur_.text));
      advance();
      expect_symbol("}");
    }
    expect_symbol("]");
    return key;
  }

 private:
  Lexer lex_;
  Token cur_;
  Mode mode_;
  VarSet vars_;
  std::set<std::string> params_;
};

DiffPoly to_equation_side(const Expr& e, const VarSet& vars) {
  try {
    return to_diffpoly(e, vars);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::UnsupportedExpression)
      throw Error(ErrorKind::NonPolynomialInU, err.what());
    throw;
  }
}

/// Affine function sum_j coeffs[j]*old_j + constant.
struct AffineForm {
  std::vector<RatFun> coeffs;
  RatFun constant;

  bool is_constant() const {
    for (const auto& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
  AffineForm& scale(const RatFun& f) {
    for (auto& c : coeffs) c *= f;
    constant *= f;
    return *this;
  }
};

AffineForm to_affine(const Expr& e, const VarSet& vars) {
  const std::size_t n = vars.size();
  AffineForm out{std::vector<RatFun>(n), RatFun()};
  switch (e.kind) {
    case Expr::Kind::Number:
      out.constant = RatFun(e.number);
      return out;
    case Expr::Kind::Param:
      out.constant = RatFun::param(e.name);
      return out;
    case Expr::Kind::Var:
      out.coeffs[*vars.index_of(e.name)] = RatFun(1);
      return out;
    case Expr::Kind::Unknown:
    case Expr::Kind::Derivative:
      throw Error(ErrorKind::NonAffineRightSide, "u cannot appear in a transform");
    case Expr::Kind::Sum: {
      AffineForm a = to_affine(e.children[0], vars);
      AffineForm b = to_affine(e.children[1], vars);
      for (std::size_t i = 0; i < n; ++i) a.coeffs[i] += b.coeffs[i];
      a.constant += b.constant;
      return a;
    }
    case Expr::Kind::Negate:
      return to_affine(e.children[0], vars).scale(RatFun(-1));
    case Expr::Kind::Product: {
      AffineForm a = to_affine(e.children[0], vars);
      AffineForm b = to_affine(e.children[1], vars);
      if (a.is_constant()) return b.scale(a.constant);
      if (b.is_constant()) return a.scale(b.constant);
      throw Error(ErrorKind::NonAffineRightSide, "product of two variable expressions");
    }
    case Expr::Kind::Quotient: {
      AffineForm a = to_affine(e.children[0], vars);
      AffineForm b = to_affine(e.children[1], vars);
      if (!b.is_constant()) throw Error(ErrorKind::NonAffineRightSide, "division by a variable");
      if (b.constant.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
      return a.scale(RatFun(1) / b.constant);
    }
    case Expr::Kind::Power: {
      AffineForm b = to_affine(e.children[0], vars);
      if (e.exponent == 1) return b;
      if (e.exponent == 0) {
        out.constant = RatFun(1);
        return out;
      }
      if (!b.is_constant()) throw Error(ErrorKind::NonAffineRightSide, "power of a variable");
      out.constant = b.constant.pow(e.exponent);
      return out;
    }
  }
  throw Error(ErrorKind::NonAffineRightSide, "unknown expression node");
}

void check_disjoint(const VarSet& vars, const std::vector<std::string>& params) {
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (vars.index_of(p))
      throw Error(ErrorKind::InvalidDeclaration, "'" + p + "' is both a variable and a parameter");
    if (!seen.insert(p).second)
      throw Error(ErrorKind::InvalidDeclaration, "parameter '" + p + "' declared twice");
  }
}

}  // namespace

PdeDoc parse_pde(std::string_view text, std::string name) {
  Parser parser(text, Mode::Pde, false);
  parser.expect_keyword("vars");
  VarSet vars(parser.ident_list());
  parser.expect_symbol(";");
  std::vector<std::string> params;
  if (parser.at_ident("params")) {
    parser.advance();
    params = parser.ident_list();
    parser.expect_symbol(";");
  }
  check_disjoint(vars, params);
  parser.set_vars(vars);
  parser.add_params(params);
  parser.expect_keyword("eq");
  Expr lhs = parser.expr();
  parser.expect_symbol("=");
  Expr rhs = parser.expr();
  if (parser.at_symbol(";")) parser.advance();
  parser.expect_end();
  DiffPoly equation = to_equation_side(lhs, vars) - to_equation_side(rhs, vars);
  return PdeDoc(std::move(vars), std::move(params), std::move(equation), std::move(name));
}

AffineTransform parse_transform(std::string_view text, const VarSet& source,
                                std::span<const std::string> params) {
  Parser parser(text, Mode::Transform, true);
  parser.set_vars(source);
  parser.add_params(params);
  const std::size_t n = source.size();
  std::vector<std::optional<std::string>> new_names(n);
  std::vector<std::optional<AffineForm>> rows(n);

  auto end_of_statement = [&] {
    if (parser.at(Token::Type::End)) return;
    if (!parser.at(Token::Type::Newline) && !parser.at_symbol(";")) parser.fail("';' or end of line");
    parser.advance();
  };

  while (!parser.at(Token::Type::End)) {
    if (parser.at(Token::Type::Newline) || parser.at_symbol(";")) {
      parser.advance();
      continue;
    }
    if (parser.at_ident("vars")) {
      parser.advance();
      VarSet declared(parser.ident_list());
      if (!(declared == source))
        throw Error(ErrorKind::DimensionMismatch, "script declares (" + declared.to_string() +
                                                      "), equation has (" + source.to_string() + ")");
      end_of_statement();
      continue;
    }
    if (parser.at_ident("params")) {
      parser.advance();
      auto extra = parser.ident_list();
      check_disjoint(source, extra);
      parser.add_params(extra);
      end_of_statement();
      continue;
    }
    const Token lhs_tok = parser.current();
    std::string lhs = parser.expect_ident();
    // x'' redefines x' if that is a source variable, otherwise x.
    std::string base = lhs;
    std::optional<std::size_t> slot = source.index_of(base);
    while (!slot && !base.empty() && base.back() == '\'') {
      base.pop_back();
      slot = source.index_of(base);
    }
    if (!slot)
      throw Error(ErrorKind::UndeclaredIdentifier,
                  lhs + " does not name a source variable (line " + std::to_string(lhs_tok.line) + ")");
    if (new_names[*slot])
      throw Error(ErrorKind::DuplicateDefinition, "'" + source[*slot] + "' is redefined by " + lhs);
    parser.expect_symbol("=");
    Expr rhs = parser.expr();
    new_names[*slot] = lhs;
    rows[*slot] = to_affine(rhs, source);
    end_of_statement();
  }

  AffineTransform t{source, source, identity_matrix(n), std::vector<RatFun>(n)};
  std::vector<std::string> target_names;
  for (std::size_t i = 0; i < n; ++i) {
    target_names.push_back(new_names[i].value_or(source[i]));
    if (rows[i]) {
      t.matrix[i] = rows[i]->coeffs;
      t.offset[i] = rows[i]->constant;
    }
  }
  std::set<std::string> unique(target_names.begin(), target_names.end());
  if (unique.size() != n)
    throw Error(ErrorKind::DuplicateDefinition, "new variable names collide with kept ones");
  t.target = VarSet(std::move(target_names));
  return t;
}

DerivKey parse_deriv_key(std::string_view text, const VarSet& vars) {
  Parser parser(text, Mode::Pde, false);
  parser.set_vars(vars);
  Expr e = parser.base();
  parser.expect_end();
  if (e.kind != Expr::Kind::Unknown) parser.fail("a derivative of u");
  return e.key;
}

RatFun parse_ratfun(std::string_view text, std::span<const std::string> params) {
  Parser parser(text, Mode::Coefficient, false);
  parser.add_params(params);
  Expr e = parser.expr();
  parser.expect_end();
  return to_ratfun(e);
}

MPoly parse_polynomial(std::string_view text, const VarSet& vars) {
  Parser parser(text, Mode::Polynomial, false);
  parser.set_vars(vars);
  Expr e = parser.expr();
  parser.expect_end();
  RatFun f = to_ratfun(e);
  if (!f.den().is_constant())
    throw Error(ErrorKind::UnsupportedExpression, "test function must be a polynomial");
  return f.num();
}

}  // namespace pdecanon

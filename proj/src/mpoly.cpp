#include "pdecanon/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "pdecanon/error.hpp"

namespace pdecanon {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::symbol(const std::string& name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(name, exponent);
  return m;
}

unsigned Monomial::degree() const noexcept {
  unsigned d = 0;
  for (const auto& [name, e] : factors_) d += e;
  return d;
}

unsigned Monomial::exponent(const std::string& name) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), name,
                             [](const Factor& f, const std::string& n) { return f.first < n; });
  return (it != factors_.end() && it->first == name) ? it->second : 0;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  Monomial q;
  auto it = factors_.begin();
  for (const auto& [name, e] : divisor.factors_) {
    while (it != factors_.end() && it->first < name) q.factors_.push_back(*it++);
    if (it == factors_.end() || it->first != name || it->second < e) return std::nullopt;
    if (it->second > e) q.factors_.emplace_back(name, it->second - e);
    ++it;
  }
  q.factors_.insert(q.factors_.end(), it, factors_.end());
  return q;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial m;
  for (const auto& f : factors_)
    if (f.first != name) m.factors_.push_back(f);
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial g;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      g.factors_.emplace_back(i->first, std::min(i->second, j->second));
      ++i;
      ++j;
    }
  }
  return g;
}

std::optional<Monomial> Monomial::sqrt() const {
  Monomial r;
  for (const auto& [name, e] : factors_) {
    if (e % 2 != 0) return std::nullopt;
    r.factors_.emplace_back(name, e / 2);
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      m.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      m.factors_.push_back(*j++);
    } else {
      m.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return m;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [name, e] : factors_) {
    if (!s.empty()) s += '*';
    s += name;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

int compare_grlex(const Monomial& a, const Monomial& b) noexcept {
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first != fb[j].first) {
      // The alphabetically earlier symbol is present in only one of them.
      return fa[i].first < fb[j].first ? 1 : -1;
    }
    if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  // Equal degree and equal common prefix means equal monomials.
  return 0;
}

// ------------------------------------------------------------------- MPoly

MPoly::MPoly(const Rational& constant) {
  if (sgn(constant) != 0) terms_.emplace(Monomial{}, constant);
}

MPoly::MPoly(const Monomial& monomial, const Rational& coefficient) {
  if (sgn(coefficient) != 0) terms_.emplace(monomial, coefficient);
}

MPoly MPoly::symbol(const std::string& name) { return MPoly(Monomial::symbol(name), Rational(1)); }

bool MPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MPoly::constant_value() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& MPoly::leading_monomial() const {
  if (terms_.empty()) throw Error(ErrorKind::DivisionByZero, "leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& MPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorKind::DivisionByZero, "leading term of zero polynomial");
  return terms_.rbegin()->second;
}

std::set<std::string> MPoly::symbols() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

bool MPoly::contains(const std::string& name) const { return degree_in(name) > 0; }

unsigned MPoly::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

unsigned MPoly::min_total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned MPoly::degree_in(const std::string& name) const noexcept {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(name));
  return d;
}

std::vector<MPoly> MPoly::coefficients_in(const std::string& name) const {
  std::vector<MPoly> out(degree_in(name) + 1);
  for (const auto& [m, c] : terms_) out[m.exponent(name)].add_term(m.without(name), c);
  return out;
}

Monomial MPoly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
  return g;
}

MPoly MPoly::derivative(const std::string& name) const {
  MPoly out;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(name);
    if (e == 0) continue;
    Monomial reduced = m.without(name) * Monomial::symbol(name, e - 1);
    out.add_term(reduced, Rational(c * e));
  }
  return out;
}

Rational MPoly::evaluate(const std::map<std::string, Rational>& point) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [name, e] : m.factors()) {
      auto it = point.find(name);
      if (it == point.end()) throw Error(ErrorKind::MissingParam, "no value for '" + name + "'");
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), it->second.get_den_mpz_t(), e);
      term *= Rational(num, den);
    }
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

MPoly MPoly::substitute(const std::map<std::string, MPoly>& values) const {
  MPoly out;
  for (const auto& [m, c] : terms_) {
    MPoly term(c);
    Monomial kept;
    for (const auto& [name, e] : m.factors()) {
      auto it = values.find(name);
      if (it == values.end()) {
        kept = kept * Monomial::symbol(name, e);
      } else {
        term *= it->second.pow(e);
      }
    }
    term *= MPoly(kept, Rational(1));
    out += term;
  }
  return out;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MPoly& MPoly::operator+=(const MPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, Rational(-c));
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, Rational(ca * cb));
  return out;
}

MPoly& MPoly::operator*=(const MPoly& other) { return *this = *this * other; }

MPoly& MPoly::operator*=(const Rational& factor) {
  if (sgn(factor) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

MPoly MPoly::pow(unsigned exponent) const {
  MPoly result(1);
  MPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

MPoly MPoly::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / leading_coefficient();
  return *this * inv;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << pdecanon::to_string(mag);
    } else {
      if (mag != 1) os << pdecanon::to_string(mag) << '*';
      os << m.to_string();
    }
  }
  return os.str();
}

// --------------------------------------------------------- free functions

MPoly exact_divide(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  auto q = try_divide(a, b);
  if (!q) {
    throw Error(ErrorKind::InexactDivision,
                "(" + a.to_string() + ") is not divisible by (" + b.to_string() + ")");
  }
  return *q;
}

std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b) {
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  MPoly quotient;
  MPoly rest = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  while (!rest.is_zero()) {
    auto q = rest.leading_monomial().divide(lb);
    if (!q) return std::nullopt;
    MPoly step(*q, Rational(rest.leading_coefficient() / cb));
    quotient += step;
    rest -= step * b;
  }
  return quotient;
}

namespace {

MPoly monomial_poly(const Monomial& m) { return MPoly(m, Rational(1)); }

/// Pseudo-remainder of a by b, both viewed as polynomials in `var`.
MPoly pseudo_remainder(MPoly a, const MPoly& b, const std::string& var) {
  unsigned db = b.degree_in(var);
  MPoly lb = b.coefficients_in(var).back();
  while (!a.is_zero()) {
    unsigned da = a.degree_in(var);
    if (da < db) break;
    MPoly la = a.coefficients_in(var).back();
    a = lb * a - la * monomial_poly(Monomial::symbol(var, da - db)) * b;
  }
  return a;
}

MPoly content_in(const MPoly& p, const std::string& var) {
  MPoly g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly primitive_part(const MPoly& p, const std::string& var) {
  if (p.is_zero()) return p;
  return primitive_integer_form(exact_divide(p, content_in(p, var)));
}

/// Integer coefficients of p are assumed; largest absolute value.
mpz_class max_norm(const MPoly& p) {
  mpz_class n = 0;
  for (const auto& [m, c] : p.terms()) n = std::max<mpz_class>(n, abs(c.get_num()));
  return n;
}

mpz_class integer_content(const MPoly& p) {
  mpz_class g = 0;
  for (const auto& [m, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return g;
}

MPoly evaluate_at(const MPoly& p, const std::string& var, const mpz_class& xi) {
  const std::vector<MPoly> coeffs = p.coefficients_in(var);
  MPoly acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * Rational(xi) + *it;
  return acc;
}

/// Polynomial in `var` whose coefficients are the symmetric xi-adic digits of h.
MPoly interpolate(MPoly h, const std::string& var, const mpz_class& xi) {
  MPoly out;
  const mpz_class half = xi / 2;
  for (unsigned i = 0; !h.is_zero(); ++i) {
    MPoly digit;
    for (const auto& [m, c] : h.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_num_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) digit += MPoly(m, Rational(r));
    }
    out += digit * MPoly(Monomial::symbol(var, i), Rational(1));
    h = (h - digit) * Rational(1, xi);
  }
  return out;
}

/// Heuristic gcd over Z[vars] of integer polynomials, exact up to sign when it
/// returns a value. vars lists every symbol of a and b.
std::optional<MPoly> heuristic_gcd(const MPoly& a, const MPoly& b, std::vector<std::string> vars) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const mpz_class ca = integer_content(a);
  const mpz_class cb = integer_content(b);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (vars.empty()) return MPoly(Rational(c));
  const MPoly pa = a * Rational(1, ca);
  const MPoly pb = b * Rational(1, cb);
  const std::string var = vars.back();
  vars.pop_back();
  mpz_class xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const auto h = heuristic_gcd(evaluate_at(pa, var, xi), evaluate_at(pb, var, xi), vars);
    if (h && !h->is_zero()) {
      MPoly g = interpolate(*h, var, xi);
      if (!g.is_zero()) {
        g = primitive_integer_form(g);
        if (try_divide(pa, g) && try_divide(pb, g)) return g * Rational(c);
      }
    }
    mpz_class root = sqrt(sqrt(xi));
    xi = xi * 73794 * root / 27011;
  }
  return std::nullopt;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  if (a.is_monomial())
    return monomial_poly(Monomial::gcd(a.leading_monomial(), b.monomial_content()));
  if (b.is_monomial())
    return monomial_poly(Monomial::gcd(b.leading_monomial(), a.monomial_content()));

  std::set<std::string> syms = a.symbols();
  for (const auto& s : b.symbols()) syms.insert(s);
  if (auto h = heuristic_gcd(primitive_integer_form(a), primitive_integer_form(b), {syms.begin(), syms.end()}))
    return h->monic();

  const std::string var = *syms.begin();
  if (!a.contains(var)) return gcd(a, content_in(b, var));
  if (!b.contains(var)) return gcd(content_in(a, var), b);

  MPoly ca = content_in(a, var);
  MPoly cb = content_in(b, var);
  MPoly g = gcd(ca, cb);
  MPoly p = primitive_integer_form(exact_divide(a, ca));
  MPoly q = primitive_integer_form(exact_divide(b, cb));
  if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
  while (true) {
    MPoly r = pseudo_remainder(p, q, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      q = MPoly(1);
      break;
    }
    p = std::move(q);
    q = primitive_part(r, var);
  }
  return (g * primitive_part(q, var)).monic();
}

std::optional<MPoly> sqrt(const MPoly& p) {
  if (p.is_zero()) return p;
  auto lead_coeff = exact_sqrt(p.leading_coefficient());
  auto lead_mono = p.leading_monomial().sqrt();
  if (!lead_coeff || !lead_mono) return std::nullopt;
  const MPoly lead_root(*lead_mono, *lead_coeff);
  const Rational twice_lead = 2 * *lead_coeff;
  const unsigned min_degree = p.min_total_degree();
  MPoly root = lead_root;
  Monomial last = *lead_mono;
  while (true) {
    MPoly rest = p - root * root;
    if (rest.is_zero()) return root;
    auto next = rest.leading_monomial().divide(*lead_mono);
    if (!next) return std::nullopt;
    // Root terms strictly decrease, and none can have degree below half of the
    // smallest degree in p, so the loop is finite.
    if (compare_grlex(*next, last) >= 0 || 2 * next->degree() < min_degree) return std::nullopt;
    root += MPoly(*next, Rational(rest.leading_coefficient() / twice_lead));
    last = *next;
  }
}

MPoly primitive_integer_form(const MPoly& p) {
  if (p.is_zero()) return p;
  mpz_class den_lcm = 1;
  mpz_class num_gcd = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (sgn(p.leading_coefficient()) < 0) factor = -factor;
  return p * factor;
}

}  // namespace pdecanon

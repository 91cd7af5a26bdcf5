#include "treelab/polynomial.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace treelab {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::Lambda:
      return "lambda";
    case Symbol::Theta:
      return "theta";
    case Symbol::S:
      return "s";
    case Symbol::T:
      return "t";
  }
  return "?";
}

int monomial_cmp(const Monomial& a, const Monomial& b) {
  int da = a[0] + a[1] + a[2] + a[3];
  int db = b[0] + b[1] + b[2] + b[3];
  if (da != db) return da < db ? -1 : 1;
  for (int i = kSymbolCount - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

MultiPolynomial::MultiPolynomial(const BigRational& c) {
  if (c != 0) terms_[{0, 0, 0, 0}] = c;
}

MultiPolynomial MultiPolynomial::variable(Symbol s, int power) {
  return term(rat(1), s, power);
}

MultiPolynomial MultiPolynomial::term(const BigRational& c, Symbol s,
                                      int power) {
  MultiPolynomial p;
  if (c != 0) {
    Monomial m{0, 0, 0, 0};
    m[static_cast<int>(s)] = power;
    p.terms_[m] = c;
  }
  return p;
}

bool MultiPolynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0, 0, 0});
}

BigRational MultiPolynomial::constant_term() const {
  auto it = terms_.find({0, 0, 0, 0});
  return it == terms_.end() ? rat(0) : it->second;
}

int MultiPolynomial::degree_in(Symbol s) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<int>(s)]);
  return d;
}

int MultiPolynomial::total_degree() const {
  if (terms_.empty()) return -1;
  const Monomial& m = terms_.rbegin()->first;
  return m[0] + m[1] + m[2] + m[3];
}

const Monomial& MultiPolynomial::leading_monomial() const {
  assert(!terms_.empty());
  return terms_.rbegin()->first;
}

const BigRational& MultiPolynomial::leading_coeff() const {
  assert(!terms_.empty());
  return terms_.rbegin()->second;
}

void MultiPolynomial::add_term(const Monomial& m, const BigRational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPolynomial MultiPolynomial::operator-() const {
  MultiPolynomial r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

MultiPolynomial& MultiPolynomial::operator+=(const MultiPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPolynomial& MultiPolynomial::operator-=(const MultiPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPolynomial MultiPolynomial::operator+(const MultiPolynomial& o) const {
  MultiPolynomial r = *this;
  r += o;
  return r;
}

MultiPolynomial MultiPolynomial::operator-(const MultiPolynomial& o) const {
  MultiPolynomial r = *this;
  r -= o;
  return r;
}

MultiPolynomial MultiPolynomial::operator*(const MultiPolynomial& o) const {
  MultiPolynomial r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]};
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

MultiPolynomial MultiPolynomial::scaled(const BigRational& c) const {
  MultiPolynomial r;
  if (c == 0) return r;
  for (const auto& [m, coef] : terms_) r.terms_[m] = coef * c;
  return r;
}

MultiPolynomial MultiPolynomial::pow(int k) const {
  assert(k >= 0);
  MultiPolynomial r(rat(1));
  MultiPolynomial base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

int MultiPolynomial::cmp(const MultiPolynomial& a, const MultiPolynomial& b) {
  auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
  for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
    int c = monomial_cmp(ia->first, ib->first);
    if (c != 0) return c;
    int cc = ::cmp(ia->second, ib->second);
    if (cc != 0) return cc < 0 ? -1 : 1;
  }
  if (ia != a.terms_.rend()) return 1;
  if (ib != b.terms_.rend()) return -1;
  return 0;
}

std::optional<MultiPolynomial> MultiPolynomial::divided_by(
    const MultiPolynomial& o) const {
  if (o.is_zero()) return std::nullopt;
  MultiPolynomial q;
  MultiPolynomial r = *this;
  const Monomial& lmo = o.leading_monomial();
  while (!r.is_zero()) {
    const Monomial& lmr = r.leading_monomial();
    Monomial d;
    for (int i = 0; i < kSymbolCount; ++i) {
      d[i] = lmr[i] - lmo[i];
      if (d[i] < 0) return std::nullopt;
    }
    BigRational c = r.leading_coeff() / o.leading_coeff();
    MultiPolynomial t;
    t.terms_[d] = c;
    q += t;
    r -= t * o;
  }
  return q;
}

BigRational MultiPolynomial::eval(
    const std::array<BigRational, kSymbolCount>& vals) const {
  BigRational acc(0);
  for (const auto& [m, c] : terms_) {
    BigRational v = c;
    for (int i = 0; i < kSymbolCount; ++i) {
      for (int k = 0; k < m[i]; ++k) v *= vals[i];
    }
    acc += v;
  }
  return acc;
}

std::vector<MultiPolynomial> MultiPolynomial::coefficients_in(Symbol s) const {
  int si = static_cast<int>(s);
  std::vector<MultiPolynomial> out(degree_in(s) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int p = rest[si];
    rest[si] = 0;
    out[p].add_term(rest, c);
  }
  return out;
}

MultiPolynomial MultiPolynomial::from_coefficients(
    Symbol s, const std::vector<MultiPolynomial>& coeffs) {
  MultiPolynomial x = variable(s);
  MultiPolynomial acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

MultiPolynomial MultiPolynomial::substituted(Symbol s,
                                             const MultiPolynomial& value) const {
  auto coeffs = coefficients_in(s);
  MultiPolynomial acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * value + *it;
  return acc;
}

std::string MultiPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    BigRational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? "-" : "+");
      if (a < 0) a = -a;
    }
    first = false;
    bool has_sym = m[0] || m[1] || m[2] || m[3];
    if (a != 1 || !has_sym) {
      os << a.get_str();
      if (has_sym) os << "*";
    }
    bool first_sym = true;
    for (int i = 0; i < kSymbolCount; ++i) {
      if (m[i] == 0) continue;
      if (!first_sym) os << "*";
      first_sym = false;
      os << symbol_name(static_cast<Symbol>(i));
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

namespace {

// Highest symbol actually present in p, if any.
std::optional<Symbol> main_symbol(const MultiPolynomial& p) {
  for (int i = kSymbolCount - 1; i >= 0; --i) {
    if (p.degree_in(static_cast<Symbol>(i)) > 0) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

MultiPolynomial normalize_lead(const MultiPolynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_coeff());
}

// Divide out the rational scalar content (gcd of numerators over lcm of
// denominators), leaving integer coefficients with content one. Keeps the
// pseudo-remainder sequences below from doubling coefficient bit-length at
// every step.
MultiPolynomial rational_primitive(const MultiPolynomial& p) {
  if (p.is_zero()) return p;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  }
  BigRational content(num_gcd, den_lcm);
  content.canonicalize();
  return p.scaled(1 / content);
}

MultiPolynomial gcd_many(const std::vector<MultiPolynomial>& ps) {
  MultiPolynomial g;
  for (const auto& p : ps) {
    g = poly_gcd(g, p);
    if (!g.is_zero() && g.is_constant()) break;
  }
  return g;
}

// content * primitive part with respect to symbol s.
std::pair<MultiPolynomial, MultiPolynomial> content_split(
    const MultiPolynomial& p, Symbol s) {
  auto coeffs = p.coefficients_in(s);
  MultiPolynomial cont = gcd_many(coeffs);
  if (cont.is_zero()) return {MultiPolynomial(rat(0)), p};
  auto pp = p.divided_by(cont);
  assert(pp.has_value());
  return {cont, rational_primitive(*pp)};
}

// Pseudo-remainder of u by v as univariate polynomials in s.
MultiPolynomial pseudo_rem(MultiPolynomial u, const MultiPolynomial& v,
                           Symbol s) {
  int dv = v.degree_in(s);
  MultiPolynomial lcv =
      v.coefficients_in(s)[dv];  // leading coefficient, free of s
  while (!u.is_zero() && u.degree_in(s) >= dv) {
    int du = u.degree_in(s);
    MultiPolynomial lcu = u.coefficients_in(s)[du];
    MultiPolynomial shift = MultiPolynomial::variable(s, du - dv);
    u = rational_primitive(u * lcv - v * lcu * shift);
    assert(u.is_zero() || u.degree_in(s) < du);
  }
  return u;
}

}  // namespace

MultiPolynomial poly_gcd(const MultiPolynomial& a, const MultiPolynomial& b) {
  if (a.is_zero()) return normalize_lead(b);
  if (b.is_zero()) return normalize_lead(a);
  if (a.is_constant() || b.is_constant()) return MultiPolynomial(rat(1));

  Symbol s = std::max(*main_symbol(a), *main_symbol(b));
  auto [cont_a, pp_a] = content_split(a, s);
  auto [cont_b, pp_b] = content_split(b, s);
  MultiPolynomial c = poly_gcd(cont_a, cont_b);

  // Common divisors of something free of s are free of s.
  if (a.degree_in(s) == 0 || b.degree_in(s) == 0) return normalize_lead(c);

  MultiPolynomial u = pp_a, v = pp_b;
  if (u.degree_in(s) < v.degree_in(s)) std::swap(u, v);
  while (true) {
    MultiPolynomial r = pseudo_rem(u, v, s);
    if (r.is_zero()) break;
    if (r.degree_in(s) == 0) {
      return normalize_lead(c);  // coprime in s
    }
    u = v;
    v = content_split(r, s).second;
  }
  return normalize_lead(c * content_split(v, s).second);
}

}  // namespace treelab

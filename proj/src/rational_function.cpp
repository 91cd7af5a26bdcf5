#include "treelab/rational_function.hpp"

#include <cassert>
#include <stdexcept>

namespace treelab {

namespace {

// Scale num and den by the same rational so both have integer coefficients
// with joint content 1 and den has a positive leading coefficient.
void normalize_pair(MultiPolynomial& num, MultiPolynomial& den) {
  BigInt lcm(1);
  auto fold_lcm = [&](const MultiPolynomial& p) {
    for (const auto& [m, c] : p.terms()) {
      BigInt d(c.get_den());
      lcm = lcm / gcd(lcm, d) * d;
    }
  };
  fold_lcm(num);
  fold_lcm(den);
  BigInt content(0);
  auto scan = [&](const MultiPolynomial& p) {
    for (const auto& [m, c] : p.terms()) {
      BigInt v = c.get_num() * (lcm / c.get_den());
      content = gcd(content, v);
    }
  };
  scan(num);
  scan(den);
  if (content == 0) content = 1;
  BigRational scale(lcm, content);
  scale.canonicalize();
  if (den.leading_coeff() < 0) scale = -scale;
  num = num.scaled(scale);
  den = den.scaled(scale);
}

}  // namespace

RationalFunction::RationalFunction(const MultiPolynomial& num,
                                   const MultiPolynomial& den)
    : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("division by zero polynomial");
  if (num_.is_zero()) {
    den_ = MultiPolynomial(rat(1));
    return;
  }
  MultiPolynomial g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *num_.divided_by(g);
    den_ = *den_.divided_by(g);
  }
  normalize_pair(num_, den_);
}

RationalFunction::RationalFunction(MultiPolynomial num, MultiPolynomial den,
                                   ReducedTag)
    : num_(std::move(num)), den_(std::move(den)) {
  assert(!den_.is_zero());
  if (num_.is_zero()) {
    den_ = MultiPolynomial(rat(1));
    return;
  }
  normalize_pair(num_, den_);
}

namespace {

MultiPolynomial exact_div(const MultiPolynomial& p, const MultiPolynomial& g) {
  if (g.is_constant()) return p.scaled(1 / g.constant_term());
  auto q = p.divided_by(g);
  assert(q.has_value());
  return *q;
}

}  // namespace

RationalFunction RationalFunction::operator-() const {
  RationalFunction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

// Sums and products keep operands reduced (mpq-style): with coprime inputs
// a/b and c/d, writing g = gcd(b, d), b = g b', d = g d', t = a d' + c b'
// and h = gcd(t, g), the sum t/h over b' (d/h) is again coprime, so no gcd
// of full cross products is ever taken.
RationalFunction RationalFunction::add_sub(const RationalFunction& o,
                                           bool negate) const {
  const MultiPolynomial& a = num_;
  const MultiPolynomial& b = den_;
  MultiPolynomial c = negate ? -o.num_ : o.num_;
  const MultiPolynomial& d = o.den_;
  MultiPolynomial g = poly_gcd(b, d);
  if (g.is_constant()) {
    return RationalFunction(a * d + c * b, b * d, ReducedTag{});
  }
  MultiPolynomial bp = exact_div(b, g);
  MultiPolynomial dp = exact_div(d, g);
  MultiPolynomial t = a * dp + c * bp;
  if (t.is_zero()) return RationalFunction();
  MultiPolynomial h = poly_gcd(t, g);
  if (h.is_constant())
    return RationalFunction(t, bp * d, ReducedTag{});
  return RationalFunction(exact_div(t, h), bp * exact_div(d, h), ReducedTag{});
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return add_sub(o, false);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return add_sub(o, true);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction();
  MultiPolynomial g1 = poly_gcd(num_, o.den_);
  MultiPolynomial g2 = poly_gcd(o.num_, den_);
  return RationalFunction(exact_div(num_, g1) * exact_div(o.num_, g2),
                          exact_div(den_, g2) * exact_div(o.den_, g1),
                          ReducedTag{});
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero function");
  if (is_zero()) return RationalFunction();
  MultiPolynomial g1 = poly_gcd(num_, o.num_);
  MultiPolynomial g2 = poly_gcd(den_, o.den_);
  return RationalFunction(exact_div(num_, g1) * exact_div(o.den_, g2),
                          exact_div(den_, g2) * exact_div(o.num_, g1),
                          ReducedTag{});
}

int RationalFunction::cmp(const RationalFunction& a, const RationalFunction& b) {
  int c = MultiPolynomial::cmp(a.num_, b.num_);
  if (c != 0) return c;
  return MultiPolynomial::cmp(a.den_, b.den_);
}

BigRational RationalFunction::eval(
    const std::array<BigRational, kSymbolCount>& vals) const {
  BigRational d = den_.eval(vals);
  if (d == 0) throw std::domain_error("pole at binding");
  return num_.eval(vals) / d;
}

double RationalFunction::eval_double(
    const std::array<BigRational, kSymbolCount>& vals) const {
  return to_double(eval(vals));
}

RationalFunction RationalFunction::substituted(
    Symbol s, const MultiPolynomial& value) const {
  return RationalFunction(num_.substituted(s, value),
                          den_.substituted(s, value));
}

std::string RationalFunction::str() const {
  if (den_ == MultiPolynomial(rat(1))) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace treelab

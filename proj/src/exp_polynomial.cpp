#include "treelab/exp_polynomial.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace treelab {

namespace {
BigRational factorial(int n) {
  BigRational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}
}  // namespace

ExpPolynomial ExpPolynomial::constant(const RationalFunction& c) {
  return term(c, 0, RationalFunction(0L));
}

ExpPolynomial ExpPolynomial::term(const RationalFunction& coef, int tdeg,
                                  const RationalFunction& rate) {
  ExpPolynomial p;
  p.add({tdeg, rate}, coef);
  return p;
}

void ExpPolynomial::add(const Key& k, const RationalFunction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPolynomial& ExpPolynomial::operator+=(const ExpPolynomial& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ExpPolynomial ExpPolynomial::operator+(const ExpPolynomial& o) const {
  ExpPolynomial r = *this;
  r += o;
  return r;
}

ExpPolynomial ExpPolynomial::operator-(const ExpPolynomial& o) const {
  ExpPolynomial r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, -c);
  return r;
}

ExpPolynomial ExpPolynomial::scaled(const RationalFunction& c) const {
  ExpPolynomial r;
  if (c.is_zero()) return r;
  for (const auto& [k, coef] : terms_) r.terms_[k] = coef * c;
  return r;
}

bool ExpPolynomial::operator==(const ExpPolynomial& o) const {
  return (*this - o).is_zero();
}

ExpPolynomial ExpPolynomial::rate_shifted(const RationalFunction& mu) const {
  ExpPolynomial r;
  for (const auto& [k, c] : terms_) r.add({k.tdeg, k.rate + mu}, c);
  return r;
}

ExpPolynomial ExpPolynomial::integrate() const {
  ExpPolynomial out;
  const RationalFunction one(1L);
  for (const auto& [k, c] : terms_) {
    int d = k.tdeg;
    const RationalFunction& rho = k.rate;
    if (rho.is_zero()) {
      out.add({d + 1, rho}, c * RationalFunction(BigRational(1, d + 1)));
      continue;
    }
    // integral of s^d e^{-rho s} over [0,t]
    //   = d!/rho^{d+1} - e^{-rho t} * sum_k (d!/k!) t^k / rho^{d+1-k}
    RationalFunction rho_pow = one;
    std::vector<RationalFunction> rho_powers(d + 2);
    rho_powers[0] = one;
    for (int i = 1; i <= d + 1; ++i) rho_powers[i] = rho_powers[i - 1] * rho;
    RationalFunction dfact(factorial(d));
    out.add({0, RationalFunction(0L)}, c * dfact / rho_powers[d + 1]);
    for (int kk = 0; kk <= d; ++kk) {
      RationalFunction coef =
          c * RationalFunction(factorial(d) / factorial(kk)) /
          rho_powers[d + 1 - kk];
      out.add({kk, rho}, -coef);
    }
  }
  return out;
}

ExpPolynomial ExpPolynomial::convolved(const RationalFunction& mu) const {
  ExpPolynomial out;
  for (const auto& [k, c] : terms_) {
    int d = k.tdeg;
    const RationalFunction& rho = k.rate;
    RationalFunction a = mu - rho;
    if (a.is_zero()) {
      // Coincident rates produce a polynomially grown term, not a failure.
      out.add({d + 1, mu}, c * RationalFunction(BigRational(1, d + 1)));
      continue;
    }
    // e^{-mu t} * integral of s^d e^{a s} over [0,t], a = mu - rho:
    //   = sum_k (-1)^{d-k} (d!/k!) t^k / a^{d+1-k} * e^{-rho t}
    //     - (-1)^d d!/a^{d+1} * e^{-mu t}
    std::vector<RationalFunction> a_powers(d + 2);
    a_powers[0] = RationalFunction(1L);
    for (int i = 1; i <= d + 1; ++i) a_powers[i] = a_powers[i - 1] * a;
    for (int kk = 0; kk <= d; ++kk) {
      BigRational sign((d - kk) % 2 == 0 ? 1 : -1);
      RationalFunction coef = c *
                              RationalFunction(sign * factorial(d) /
                                               factorial(kk)) /
                              a_powers[d + 1 - kk];
      out.add({kk, rho}, coef);
    }
    BigRational sign(d % 2 == 0 ? 1 : -1);
    out.add({0, mu}, -(c * RationalFunction(sign * factorial(d)) /
                       a_powers[d + 1]));
  }
  return out;
}

ExpPolynomial ExpPolynomial::differentiated() const {
  ExpPolynomial out;
  for (const auto& [k, c] : terms_) {
    if (k.tdeg > 0)
      out.add({k.tdeg - 1, k.rate}, c * RationalFunction(rat(k.tdeg)));
    if (!k.rate.is_zero()) out.add({k.tdeg, k.rate}, -(c * k.rate));
  }
  return out;
}

RationalFunction ExpPolynomial::constant_part() const {
  auto it = terms_.find({0, RationalFunction(0L)});
  return it == terms_.end() ? RationalFunction() : it->second;
}

double ExpPolynomial::eval(const std::array<BigRational, kSymbolCount>& vals,
                           double t) const {
  double acc = 0;
  for (const auto& [k, c] : terms_) {
    acc += c.eval_double(vals) * std::pow(t, k.tdeg) *
           std::exp(-k.rate.eval_double(vals) * t);
  }
  return acc;
}

std::map<BigRational, BigRational> ExpPolynomial::eval_formal(
    const std::array<BigRational, kSymbolCount>& vals,
    const BigRational& t) const {
  std::map<BigRational, BigRational> out;
  for (const auto& [k, c] : terms_) {
    BigRational expo = k.rate.eval(vals) * t;
    BigRational v = c.eval(vals);
    for (int i = 0; i < k.tdeg; ++i) v *= t;
    auto [it, inserted] = out.emplace(expo, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) out.erase(it);
    }
    if (inserted && v == 0) out.erase(expo);
  }
  return out;
}

std::map<BigRational, BigRational> formal_product(
    const std::map<BigRational, BigRational>& a,
    const std::map<BigRational, BigRational>& b) {
  std::map<BigRational, BigRational> out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      BigRational e = ea + eb, c = ca * cb;
      auto [it, inserted] = out.emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

std::string ExpPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (k.tdeg > 0) {
      os << "*t";
      if (k.tdeg > 1) os << "^" << k.tdeg;
    }
    if (!k.rate.is_zero()) os << "*exp(-(" << k.rate.str() << ")*t)";
  }
  return os.str();
}

}  // namespace treelab

#pragma once

#include <map>
#include <string>
#include <vector>

#include "treelab/rational_function.hpp"

namespace treelab {

// Finite sum of terms coef * t^tdeg * exp(-rate*t), with coef and rate
// rational functions in lambda/theta (never in t). The key set (tdeg, rate)
// is kept duplicate-free and no stored coefficient is zero.
class ExpPolynomial {
 public:
  ExpPolynomial() = default;
  static ExpPolynomial constant(const RationalFunction& c);
  static ExpPolynomial term(const RationalFunction& coef, int tdeg,
                            const RationalFunction& rate);

  bool is_zero() const { return terms_.empty(); }

  ExpPolynomial operator+(const ExpPolynomial& o) const;
  ExpPolynomial operator-(const ExpPolynomial& o) const;
  ExpPolynomial& operator+=(const ExpPolynomial& o);
  ExpPolynomial scaled(const RationalFunction& c) const;
  bool operator==(const ExpPolynomial& o) const;

  // Multiply by exp(-mu*t): shifts every rate by mu.
  ExpPolynomial rate_shifted(const RationalFunction& mu) const;

  // Exact integral over [0, t], expressed again in t.
  ExpPolynomial integrate() const;
  // Exact convolution: t -> integral over [0,t] of exp(-mu*(t-s)) f(s) ds.
  ExpPolynomial convolved(const RationalFunction& mu) const;
  ExpPolynomial differentiated() const;

  // Terms with rate 0 and tdeg 0 (the t -> infinity limit when all other
  // rates are positive).
  RationalFunction constant_part() const;

  double eval(const std::array<BigRational, kSymbolCount>& vals,
              double t) const;
  // Exact evaluation at rational t with symbol bindings, keeping exponentials
  // formal: returns map from exponent value (rate*t) to coefficient value.
  std::map<BigRational, BigRational> eval_formal(
      const std::array<BigRational, kSymbolCount>& vals,
      const BigRational& t) const;

  std::string str() const;

  struct Key {
    int tdeg;
    RationalFunction rate;
    bool operator<(const Key& o) const {
      if (tdeg != o.tdeg) return tdeg < o.tdeg;
      return rate < o.rate;
    }
  };
  const std::map<Key, RationalFunction>& terms() const { return terms_; }

 private:
  void add(const Key& k, const RationalFunction& c);
  std::map<Key, RationalFunction> terms_;
};

// Product of two formal exponential sums (used by the semigroup check).
std::map<BigRational, BigRational> formal_product(
    const std::map<BigRational, BigRational>& a,
    const std::map<BigRational, BigRational>& b);

}  // namespace treelab

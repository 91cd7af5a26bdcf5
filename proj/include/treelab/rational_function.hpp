#pragma once

#include <array>
#include <string>

#include "treelab/polynomial.hpp"

namespace treelab {

// Exact ratio of MultiPolynomials, kept in canonical form: gcd(num, den) = 1,
// integer coefficients with joint content 1, den leading coefficient > 0.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(rat(1)) {}
  RationalFunction(const MultiPolynomial& num, const MultiPolynomial& den);
  explicit RationalFunction(const MultiPolynomial& p)
      : RationalFunction(p, MultiPolynomial(rat(1))) {}
  explicit RationalFunction(const BigRational& c)
      : RationalFunction(MultiPolynomial(c)) {}
  explicit RationalFunction(long c) : RationalFunction(rat(c)) {}

  static RationalFunction variable(Symbol s) {
    return RationalFunction(MultiPolynomial::variable(s));
  }

  const MultiPolynomial& num() const { return num_; }
  const MultiPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction& operator+=(const RationalFunction& o) {
    return *this = *this + o;
  }
  RationalFunction& operator-=(const RationalFunction& o) {
    return *this = *this - o;
  }

  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }
  // Total order for use as a map key.
  static int cmp(const RationalFunction& a, const RationalFunction& b);
  bool operator<(const RationalFunction& o) const { return cmp(*this, o) < 0; }

  // Throws on a pole at the binding.
  BigRational eval(const std::array<BigRational, kSymbolCount>& vals) const;
  double eval_double(const std::array<BigRational, kSymbolCount>& vals) const;

  RationalFunction substituted(Symbol s, const MultiPolynomial& value) const;

  std::string str() const;

 private:
  // Construct from an already-coprime pair (only normalization applied).
  struct ReducedTag {};
  RationalFunction(MultiPolynomial num, MultiPolynomial den, ReducedTag);
  RationalFunction add_sub(const RationalFunction& o, bool negate) const;

  MultiPolynomial num_, den_;
};

}  // namespace treelab

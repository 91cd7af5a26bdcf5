#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treelab/rational.hpp"

namespace treelab {

// Fixed four-symbol alphabet. Order matters for the monomial order below.
enum class Symbol : int { Lambda = 0, Theta = 1, S = 2, T = 3 };
inline constexpr int kSymbolCount = 4;

const char* symbol_name(Symbol s);

// Exponent vector over the alphabet.
using Monomial = std::array<int, kSymbolCount>;

// Graded lexicographic order, lambda < theta < s < t: compare total degree
// first, then exponents from the highest symbol (t) downward.
int monomial_cmp(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return monomial_cmp(a, b) < 0;
  }
};

// Exact multivariate polynomial over Q in {lambda, theta, s, t}.
class MultiPolynomial {
 public:
  MultiPolynomial() = default;
  explicit MultiPolynomial(const BigRational& c);
  explicit MultiPolynomial(long c) : MultiPolynomial(rat(c)) {}

  static MultiPolynomial variable(Symbol s, int power = 1);
  // Convenience: c * sym^power.
  static MultiPolynomial term(const BigRational& c, Symbol s, int power);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (coefficient of the empty monomial).
  BigRational constant_term() const;

  int degree_in(Symbol s) const;
  int total_degree() const;  // -1 for the zero polynomial

  const std::map<Monomial, BigRational, MonomialLess>& terms() const {
    return terms_;
  }

  // Leading term under the monomial order.
  const Monomial& leading_monomial() const;
  const BigRational& leading_coeff() const;

  MultiPolynomial operator-() const;
  MultiPolynomial operator+(const MultiPolynomial& o) const;
  MultiPolynomial operator-(const MultiPolynomial& o) const;
  MultiPolynomial operator*(const MultiPolynomial& o) const;
  MultiPolynomial& operator+=(const MultiPolynomial& o);
  MultiPolynomial& operator-=(const MultiPolynomial& o);

  MultiPolynomial scaled(const BigRational& c) const;
  MultiPolynomial pow(int k) const;

  bool operator==(const MultiPolynomial& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const MultiPolynomial& o) const { return !(*this == o); }
  static int cmp(const MultiPolynomial& a, const MultiPolynomial& b);

  // Exact division; nullopt if o does not divide *this exactly.
  std::optional<MultiPolynomial> divided_by(const MultiPolynomial& o) const;

  BigRational eval(const std::array<BigRational, kSymbolCount>& vals) const;
  // Substitute a polynomial for one symbol (Horner in that symbol).
  MultiPolynomial substituted(Symbol s, const MultiPolynomial& value) const;

  // View as univariate in `s` with polynomial coefficients; index = power.
  std::vector<MultiPolynomial> coefficients_in(Symbol s) const;
  static MultiPolynomial from_coefficients(
      Symbol s, const std::vector<MultiPolynomial>& coeffs);

  std::string str() const;

  void add_term(const Monomial& m, const BigRational& c);

 private:
  std::map<Monomial, BigRational, MonomialLess> terms_;
};

// GCD over Q[lambda,theta,s,t]: content extraction in the highest present
// symbol plus a primitive pseudo-remainder sequence. Result is normalized to
// leading coefficient 1; gcd(0,0) = 0.
MultiPolynomial poly_gcd(const MultiPolynomial& a, const MultiPolynomial& b);

}  // namespace treelab

#pragma once

#include <gmpxx.h>

#include <string>

namespace treelab {

// Arbitrary-precision exact arithmetic. mpq_class already maintains the
// canonical form (positive denominator, reduced fraction).
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational rat(long num, long den = 1) {
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

inline BigRational rat_from_string(const std::string& s) {
  BigRational r(s);
  r.canonicalize();
  return r;
}

inline double to_double(const BigRational& x) { return x.get_d(); }

inline std::string to_string(const BigRational& x) { return x.get_str(); }

}  // namespace treelab

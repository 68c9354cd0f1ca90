#pragma once

// Exact rational scalars.  Thin alias over Boost.Multiprecision's
// cpp_rational, which keeps values in lowest terms with positive
// denominator and arbitrary-precision integer parts.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qglue {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Binomial coefficient C(n, k) as an exact rational (0 for k < 0 or k > n).
inline Rat binomial(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  BigInt num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return Rat(num, den);
}

}  // namespace qglue

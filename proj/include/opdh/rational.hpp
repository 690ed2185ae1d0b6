#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace opdh {

// Exact scalars. All linear algebra in the library is over Q; nothing is
// ever rounded, so equality of maps is meaningful.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational frac(long num, long den) { return Rational(num, den); }

inline Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace opdh

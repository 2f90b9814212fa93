#pragma once

// Test-side reference arithmetic. The map is re-derived here in its
// factored form 4k^2 x (x - d)^2 with 50-digit floats, sharing nothing with
// the library except the formula itself.

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace reference {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real one_minus_cos(const Real& theta) { return 1 - cos(theta); }

inline Real map(const Real& k, const Real& x) {
  const Real d = (2 * k - 1) / (2 * k);
  return 4 * k * k * x * (x - d) * (x - d);
}

inline Real delta(const Real& k, const Real& x) {
  const Real a = (k - 1) / k;
  return 4 * x * k * k * (1 - x) * (a - x);
}

/// Rounds to `digits` significant decimal digits, as a hand calculation would.
inline Real round_sig(const Real& x, int digits) {
  if (x == 0) return x;
  const int e = static_cast<int>(floor(log10(abs(x))));
  const Real scale = pow(Real(10), digits - 1 - e);
  return round(x * scale) / scale;
}

inline std::vector<double> trace(const Real& k, const Real& eps0, int steps, int digits = 0) {
  std::vector<double> out{static_cast<double>(eps0)};
  Real x = eps0;
  for (int i = 0; i < steps; ++i) {
    x = map(k, x);
    if (digits) x = round_sig(x, digits);
    out.push_back(static_cast<double>(x));
  }
  return out;
}

}  // namespace reference

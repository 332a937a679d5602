#pragma once

#include <cmath>

#include "qflab/numeric.hpp"

namespace qflab {

/// Bessel J0. Taylor series (long double) for |t| < 20, Hankel asymptotic
/// expansion truncated at its smallest term beyond. Absolute error is below
/// 1e-12 on the whole line.
inline double bessel_j0(double t) {
  t = std::abs(t);
  if (t < 20.0) {
    const long double q = static_cast<long double>(t) * t / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<long double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-22L) break;
    }
    return static_cast<double>(sum);
  }
  // a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k); P uses even k, Q odd k.
  double P = 0.0, Q = 0.0;
  double ak = 1.0, prev = 1e300;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) ak *= -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k);
    const double term = ak / std::pow(t, k);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    const double signed_term = (k / 2) % 2 == 0 ? term : -term;
    if (k % 2 == 0)
      P += signed_term;
    else
      Q += signed_term;
    if (std::abs(term) < 1e-17) break;
  }
  const double phase = t - pi / 4.0;
  return std::sqrt(2.0 / (pi * t)) * (P * std::cos(phase) - Q * std::sin(phase));
}

}  // namespace qflab

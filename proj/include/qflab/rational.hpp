#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qflab {

/// Exact rationals for densities and sieve weights. Denominators of the
/// Selberg sum J outgrow 64 bits once z passes ~25, so this is arbitrary precision.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace qflab

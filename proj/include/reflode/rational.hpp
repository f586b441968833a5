#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace reflode {

// Frequency coordinates are exact rationals so that canonical signs, zero
// tests, and lattice arithmetic never depend on floating-point rounding.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p" for integers, "p/q" otherwise; used by parsers, digests, reports.
inline std::string to_string(const Rational& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace reflode

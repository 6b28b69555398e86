#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sinklock {

using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms; integers print without a denominator.
inline std::string to_fraction_string(const rational& r) {
  return r.str();
}

inline double to_double(const rational& r) {
  return r.convert_to<double>();
}

/// 2^-e as an exact rational.
inline rational inverse_power_of_two(unsigned e) {
  big_int den = 1;
  den <<= e;
  return rational(big_int(1), den);
}

}  // namespace sinklock

#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace choired {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "num/den" in lowest terms.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Fixed-point rendering with `places` digits after the point, e.g. 0.1797598.
std::string format_decimal(const Rational& r, int places = 7);

}  // namespace choired

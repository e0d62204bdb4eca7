#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace detk {

// Exact rational coefficients. cpp_rational keeps the invariants we need:
// always reduced to lowest terms, denominator > 0, zero stored as 0/1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

} // namespace detk

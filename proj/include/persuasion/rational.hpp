#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "persuasion/errors.hpp"

namespace persuasion {

// Exact arithmetic scalar for the optional rational solve mode.
using Rational = boost::multiprecision::cpp_rational;

// Doubles are dyadic, so this conversion is exact.
inline Rational rational_from_double(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string rational_to_string(const Rational& r) {
  return r.str();
}

// Accepts "p/q", integers, and plain decimals ("0.25" -> 1/4, exact).
Rational parse_rational(const std::string& text);

// Numeric traits used by the templated kernels: exact scalars compare
// against zero, floats against the configured tolerance.
template <class S>
struct scalar_traits {
  static constexpr bool exact = true;
  static S tolerance(double) { return S(0); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double tolerance(double tol) { return tol; }
};

}  // namespace persuasion

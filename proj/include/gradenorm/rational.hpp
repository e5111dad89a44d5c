#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "gradenorm/scalar.hpp"

namespace gradenorm {

/// Exact rational scalar for desk-scale oracle checks (d <= 4, N <= 4).
using Rational = boost::multiprecision::cpp_rational;

template <>
struct ScalarTraits<Rational> {
  using RealType = Rational;
  static constexpr bool is_complex = false;
  static constexpr bool is_exact = true;
  static constexpr Field field = Field::Real;

  static Rational conj(const Rational& x) { return x; }
  static Rational real(const Rational& x) { return x; }
  static Rational imag(const Rational&) { return 0; }
  static Rational abs_sq(const Rational& x) { return x * x; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static double to_double(const Rational& x) { return x.template convert_to<double>(); }
};

}  // namespace gradenorm

#pragma once

#include <cmath>
#include <complex>

namespace gradenorm {

/// Scalar field tag carried by specs and reports.
enum class Field { Real, Complex };

/// Uniform access to the handful of scalar operations the algebra layer
/// needs.  Specialized for double, std::complex<double> and (in
/// rational.hpp) the exact rational type.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  using RealType = double;
  static constexpr bool is_complex = false;
  static constexpr bool is_exact = false;
  static constexpr Field field = Field::Real;

  static double conj(double x) { return x; }
  static double real(double x) { return x; }
  static double imag(double) { return 0.0; }
  static double abs_sq(double x) { return x * x; }
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using RealType = double;
  static constexpr bool is_complex = true;
  static constexpr bool is_exact = false;
  static constexpr Field field = Field::Complex;

  static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
  static double real(const std::complex<double>& x) { return x.real(); }
  static double imag(const std::complex<double>& x) { return x.imag(); }
  static double abs_sq(const std::complex<double>& x) { return std::norm(x); }
  static bool is_zero(const std::complex<double>& x) {
    return x.real() == 0.0 && x.imag() == 0.0;
  }
  static double to_double(const std::complex<double>& x) { return x.real(); }
};

}  // namespace gradenorm

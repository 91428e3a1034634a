#pragma once

#include <cmath>
#include <limits>

#include <quadmath.h>

namespace heatctl::numerics {

// Scalar abstraction so the eigensolver kernels can run in double or in
// __float128.  The quad instantiation exists because observability Gramians
// of fast heat control problems have condition numbers far beyond 1/eps of
// double (the cost grows like exp(c/T)); see control::alpha_star_probe.
template <class Real>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double abs(double x) { return std::fabs(x); }
  static double sqrt(double x) { return std::sqrt(x); }
  static double exp(double x) { return std::exp(x); }
  static double expm1(double x) { return std::expm1(x); }
  static double log(double x) { return std::log(x); }
  static double epsilon() { return std::numeric_limits<double>::epsilon(); }
  static double infinity() { return std::numeric_limits<double>::infinity(); }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<__float128> {
  static __float128 abs(__float128 x) { return fabsq(x); }
  static __float128 sqrt(__float128 x) { return sqrtq(x); }
  static __float128 exp(__float128 x) { return expq(x); }
  static __float128 expm1(__float128 x) { return expm1q(x); }
  static __float128 log(__float128 x) { return logq(x); }
  static __float128 epsilon() { return FLT128_EPSILON; }
  static __float128 infinity() { return HUGE_VALQ; }
  static double to_double(__float128 x) { return static_cast<double>(x); }
};

using quad = __float128;

}  // namespace heatctl::numerics

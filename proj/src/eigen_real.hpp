#pragma once

// Eigen scalar traits for the MPFR-backed Real. Boost 1.74's own Eigen glue
// omits infinity() and quiet_NaN(), which the eigensolvers require.

#include "rtc/precision.hpp"

#include <Eigen/Core>

#include <limits>

namespace Eigen {

template <>
struct NumTraits<rtc::Real> : GenericNumTraits<rtc::Real> {
  using Real = rtc::Real;
  using NonInteger = rtc::Real;
  using Nested = rtc::Real;
  using Literal = rtc::Real;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16,
  };

  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return epsilon() * 1000; }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return -(std::numeric_limits<Real>::max)(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(Real::default_precision()); }
};

}  // namespace Eigen

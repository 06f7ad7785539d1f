#pragma once

// Multiprecision scalar types shared by the numeric modules.
//
// Real is an MPFR float whose precision is taken from the process-wide default
// at construction time. Set that default with ScopedPrecision from the thread
// that orchestrates a computation, before any worker threads start.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <limits>

// Under C++20 rewritten comparisons, Boost's templated rational == integer
// recurses forever; exact non-template overloads take precedence.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, long long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
}  // namespace boost

namespace rtc {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Rational = boost::rational<std::int64_t>;

struct PrecisionCtx {
  int digits = 30;
  int toleranceExponent = 20;

  /// Context with the default tolerance exponent (digits - 10).
  static PrecisionCtx with_digits(int digits);

  /// 10^(-toleranceExponent) at the current working precision.
  Real tolerance() const;
  /// 10^(-e) at the current working precision.
  static Real power_of_ten(int e);

  void validate() const;
};

/// Makes Real's default precision equal the requested digits for the lifetime
/// of the object. The process-wide default is written only when it differs, so
/// concurrent scopes that agree on the precision never race.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(const PrecisionCtx& ctx);
  explicit ScopedPrecision(int digits);
  ~ScopedPrecision();

  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned previous_;
  bool changed_;
};

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(0) {}

  Complex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
  Real abs() const;

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(Complex a, const Real& s);

Real pi();
/// sin(pi * r), exact zero/unit values at multiples of 1/2.
Real sin_pi(const Rational& r);
/// exp(i * pi * r), exact at multiples of 1/2.
Complex exp_i_pi(const Rational& r);

/// Reduces r into [0, 2).
Rational reduce_mod2(const Rational& r);

}  // namespace rtc

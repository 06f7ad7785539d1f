#include "rtc/precision.hpp"

#include "rtc/error.hpp"

#include <mpfr.h>

namespace rtc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Inadmissible: return "inadmissible parameters";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::Degenerate: return "degenerate object";
    case ErrorKind::NumericalInstability: return "numerical instability";
    case ErrorKind::Capability: return "capability exceeded";
    case ErrorKind::OracleFailure: return "oracle failure";
    case ErrorKind::Coverage: return "no table coverage";
    case ErrorKind::Cache: return "cache error";
    case ErrorKind::Internal: return "internal error";
  }
  return "unknown error";
}

PrecisionCtx PrecisionCtx::with_digits(int digits) {
  return PrecisionCtx{digits, digits - 10};
}

void PrecisionCtx::validate() const {
  if (digits < 15) fail(ErrorKind::Parameter, "precision must be at least 15 digits");
  if (toleranceExponent < 1 || toleranceExponent >= digits)
    fail(ErrorKind::Parameter, "tolerance exponent must lie in [1, digits)");
}

Real PrecisionCtx::power_of_ten(int e) {
  return boost::multiprecision::pow(Real(10), -e);
}

Real PrecisionCtx::tolerance() const { return power_of_ten(toleranceExponent); }

ScopedPrecision::ScopedPrecision(const PrecisionCtx& ctx) : ScopedPrecision(ctx.digits) {}

ScopedPrecision::ScopedPrecision(int digits)
    : previous_(Real::default_precision()), changed_(previous_ != static_cast<unsigned>(digits)) {
  if (changed_) Real::default_precision(static_cast<unsigned>(digits));
}

ScopedPrecision::~ScopedPrecision() {
  if (changed_) Real::default_precision(previous_);
}

Real Complex::abs() const { return boost::multiprecision::sqrt(norm2()); }

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator*(Complex a, const Real& s) { return a *= s; }

Complex operator/(const Complex& a, const Complex& b) {
  Real den = b.norm2();
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Complex operator/(Complex a, const Real& s) {
  a.re /= s;
  a.im /= s;
  return a;
}

Real pi() {
  Real out;
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

Rational reduce_mod2(const Rational& r) {
  const std::int64_t period = 2 * r.denominator();
  std::int64_t num = r.numerator() % period;
  if (num < 0) num += period;
  return Rational(num, r.denominator());
}

Real sin_pi(const Rational& r) {
  const Rational x = reduce_mod2(r);
  if (x.denominator() == 1) return Real(0);
  if (x == Rational(1, 2)) return Real(1);
  if (x == Rational(3, 2)) return Real(-1);
  Real arg = pi() * Real(x.numerator()) / Real(x.denominator());
  return boost::multiprecision::sin(arg);
}

Complex exp_i_pi(const Rational& r) {
  const Rational x = reduce_mod2(r);
  return {sin_pi(x + Rational(1, 2)), sin_pi(x)};
}

}  // namespace rtc

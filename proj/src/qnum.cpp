#include "rtc/qnum.hpp"

#include "rtc/error.hpp"

#include <cmath>
#include <numbers>

namespace rtc {

namespace {

// sin(pi j / ell) for j in [0, 2 ell).
class SinTable {
 public:
  explicit SinTable(int ell) : ell_(ell) {
    values_.reserve(2 * ell);
    for (int j = 0; j < 2 * ell; ++j) values_.push_back(sin_pi(Rational(j, ell)));
  }
  const Real& at(std::int64_t j) const {
    std::int64_t r = j % (2 * ell_);
    if (r < 0) r += 2 * ell_;
    return values_[r];
  }

 private:
  int ell_;
  std::vector<Real> values_;
};

void check_factors(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda,
                   std::int64_t top, std::int64_t bottom) {
  if ((params.phase * bottom) % params.ell == 0)
    fail(ErrorKind::Resonance, datum.algebra.name() + " ell=" + std::to_string(params.ell) +
                                   ": quantum dimension denominator vanishes (m<rho,alpha>=" +
                                   std::to_string(bottom) + ")");
  if ((params.phase * top) % params.ell == 0)
    fail(ErrorKind::Degenerate, datum.algebra.name() + " ell=" + std::to_string(params.ell) + ": object " +
                                    lambda.to_string() + " has a vanishing quantum-dimension factor");
}

Real qdim_with(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda, const SinTable& sines) {
  const Weight shifted = lambda + datum.rho;
  Real d = 1;
  for (const auto& alpha : datum.positiveRoots) {
    const std::int64_t top = datum.scaled_pairing(shifted, alpha);
    const std::int64_t bottom = datum.scaled_pairing(datum.rho, alpha);
    if (top == bottom) continue;
    check_factors(datum, params, lambda, top, bottom);
    d *= sines.at(params.phase * top);
    d /= sines.at(params.phase * bottom);
  }
  return d;
}

void check_membership(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda) {
  if (lambda.rank() != datum.rank()) fail(ErrorKind::Parameter, "weight length does not match the rank");
  if (!lambda.is_dominant()) fail(ErrorKind::Parameter, "weight " + lambda.to_string() + " is not dominant");
  const AffineWall wall = affine_wall(datum, params.ell);
  std::int64_t s = 0;
  for (int i = 0; i < datum.rank(); ++i) s += (lambda[i] + 1) * wall.pairing[i];
  if (s >= params.ell)
    fail(ErrorKind::Parameter, "weight " + lambda.to_string() + " is not a simple object at ell=" + std::to_string(params.ell));
}

}  // namespace

Real GlobalQuantities::residual() const {
  const Complex prod = pPlus * pMinus;
  return (prod - Complex(table.globalDim)).abs() / table.globalDim;
}

Real qdim(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda, const PrecisionCtx& ctx) {
  check_membership(datum, params, lambda);
  ScopedPrecision scope(ctx);
  const Weight shifted = lambda + datum.rho;
  Real d = 1;
  for (const auto& alpha : datum.positiveRoots) {
    const std::int64_t top = datum.scaled_pairing(shifted, alpha);
    const std::int64_t bottom = datum.scaled_pairing(datum.rho, alpha);
    if (top == bottom) continue;
    check_factors(datum, params, lambda, top, bottom);
    d *= sin_pi(Rational(params.phase * top, params.ell));
    d /= sin_pi(Rational(params.phase * bottom, params.ell));
  }
  return d;
}

double qdim_double(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda) {
  check_membership(datum, params, lambda);
  const Weight shifted = lambda + datum.rho;
  double d = 1;
  for (const auto& alpha : datum.positiveRoots) {
    const std::int64_t top = datum.scaled_pairing(shifted, alpha);
    const std::int64_t bottom = datum.scaled_pairing(datum.rho, alpha);
    if (top == bottom) continue;
    check_factors(datum, params, lambda, top, bottom);
    const double scale = std::numbers::pi * params.phase / params.ell;
    d *= std::sin(scale * static_cast<double>(top % (2 * params.ell)));
    d /= std::sin(scale * static_cast<double>(bottom % (2 * params.ell)));
  }
  return d;
}

Rational twist_exponent(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda) {
  const Weight w = lambda + datum.rho + datum.rho;
  const Rational h = scaled_inner_product(datum, lambda, w);
  return reduce_mod2(h * params.phase / params.ell);
}

Complex twist(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda, const PrecisionCtx& ctx) {
  check_membership(datum, params, lambda);
  ScopedPrecision scope(ctx);
  return exp_i_pi(twist_exponent(datum, params, lambda));
}

GlobalQuantities global_quantities(const RootDatum& datum, const RootOfUnityParams& params,
                                   const SimpleObjectSet& objects, const PrecisionCtx& ctx) {
  if (objects.size() == 0) fail(ErrorKind::Inadmissible, "empty simple-object set");
  ScopedPrecision scope(ctx);
  const SinTable sines(params.ell);
  GlobalQuantities out;
  QDimTable& t = out.table;
  t.params = params;
  t.globalDim = 0;
  out.pPlus = Complex();
  out.pMinus = Complex();
  for (const Weight& lambda : objects.objects) {
    Real d = qdim_with(datum, params, lambda, sines);
    Rational r = twist_exponent(datum, params, lambda);
    Complex theta = exp_i_pi(r);
    const Real d2 = d * d;
    t.globalDim += d2;
    out.pPlus += theta * d2;
    out.pMinus += theta.conj() * d2;
    t.dims.push_back(std::move(d));
    t.twists.push_back(std::move(theta));
    t.twistExponents.push_back(r);
  }
  return out;
}

GlobalQuantities global_quantities(const RootDatum& datum, const RootOfUnityParams& params, const PrecisionCtx& ctx) {
  return global_quantities(datum, params, simple_objects(datum, params.ell), ctx);
}

}  // namespace rtc

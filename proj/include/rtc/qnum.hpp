#pragma once

// Quantum dimensions, twists, global dimension and the Gauss sums p+-.
//
// Conventions (short-root normalized pairing m<,>):
//   d(lambda)     = prod_{alpha>0} sin(pi p m<lambda+rho, alpha>/ell) / sin(pi p m<rho, alpha>/ell)
//   theta_lambda  = exp(i pi p m<lambda, lambda + 2 rho>/ell)
//   p_pm          = sum_lambda theta_lambda^{pm 1} d(lambda)^2
// All pairings are exact rationals; only the final sin/exp is evaluated in
// floating point. Here p stands for RootOfUnityParams::phase, the
// representative of p mod ell in (-ell/2, ell/2], so p and ell - p give
// complex-conjugate data.

#include "rtc/alcove.hpp"
#include "rtc/precision.hpp"

#include <vector>

namespace rtc {

struct QDimTable {
  RootOfUnityParams params;
  std::vector<Real> dims;
  Real globalDim;                        // D^2 = sum d^2
  std::vector<Complex> twists;
  std::vector<Rational> twistExponents;  // theta = exp(i pi r), r in [0, 2)
};

struct GlobalQuantities {
  QDimTable table;
  Complex pPlus;
  Complex pMinus;

  /// |p+ p- - D^2| / D^2
  Real residual() const;
};

Real qdim(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda, const PrecisionCtx& ctx);
/// Machine-precision quantum dimension (sign questions only).
double qdim_double(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda);

/// r with theta_lambda = exp(i pi r), reduced to [0, 2).
Rational twist_exponent(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda);
Complex twist(const RootDatum& datum, const RootOfUnityParams& params, const Weight& lambda, const PrecisionCtx& ctx);

GlobalQuantities global_quantities(const RootDatum& datum, const RootOfUnityParams& params,
                                   const SimpleObjectSet& objects, const PrecisionCtx& ctx);
/// Convenience overload; enumerates the simple objects.
GlobalQuantities global_quantities(const RootDatum& datum, const RootOfUnityParams& params, const PrecisionCtx& ctx);

}  // namespace rtc

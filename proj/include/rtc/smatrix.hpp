#pragma once

// S-matrix routes: the Kac-Peterson Weyl-group sum (oracle), the Verlinde
// formula, reconstruction of S from fusion rules, dimensions and twists, and
// the invertibility test that decides modularity.
//
// Every S-matrix here is normalized so that S_{1,1} = 1.

#include "rtc/fusion.hpp"
#include "rtc/qnum.hpp"

#include <cstddef>
#include <vector>

namespace rtc {

struct ComplexMatrix {
  int n = 0;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  explicit ComplexMatrix(int size) : n(size), data(static_cast<std::size_t>(size) * size) {}

  Complex& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
  const Complex& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
};

/// Size of the Weyl group by orbit closure; capability error above `cap`.
long weyl_group_order(const RootDatum& datum, long cap = 10000);

/// S_{lambda,mu} = sum_w det(w) exp(-2 pi i p m<w(lambda+rho), mu+rho>/ell), normalized;
/// p enters through RootOfUnityParams::phase.
ComplexMatrix kp_smatrix(const RootDatum& datum, int ell, int p, const PrecisionCtx& ctx);

struct VerlindeResult {
  int n = 0;
  std::vector<std::vector<Channel>> products;  // index i * n + j
  double maxResidual = 0;

  int coeff(int i, int j, int k) const;
};

/// Evaluates the Verlinde formula and rounds to integers. The sum runs in
/// double precision; the 1e-6 rounding threshold sits far above its error.
VerlindeResult verlinde(const ComplexMatrix& s, const PrecisionCtx& ctx);

/// S_{lambda,mu} = (theta_lambda theta_mu)^{-1} sum_nu N_{lambda*,mu}^nu d(nu) theta_nu.
ComplexMatrix reconstruct_smatrix(const FusionTable& table, const QDimTable& qtable, const PrecisionCtx& ctx);

struct InvertibilityReport {
  bool invertible = false;
  Real unitarityDefect;     // max |((S/D)(S/D)^dagger - I)_{ij}|
  Real minSingularValue;    // only computed when the defect test fails
};

/// Full diagnostic; throws NumericalInstability in the indeterminate zone.
InvertibilityReport analyze_invertibility(const ComplexMatrix& s, const PrecisionCtx& ctx);
bool s_invertible(const ComplexMatrix& s, const PrecisionCtx& ctx);

}  // namespace rtc

#include "rtc/smatrix.hpp"

#include "eigen_real.hpp"
#include "rtc/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <unordered_map>

namespace rtc {

namespace {

// Orbit of a regular weight with the determinant of the Weyl element reaching each point.
std::vector<std::pair<Weight, int>> signed_orbit(const RootDatum& datum, const Weight& start, long cap) {
  std::vector<std::pair<Weight, int>> orbit{{start, 1}};
  std::unordered_map<Weight, int, WeightHash> seen{{start, 1}};
  for (std::size_t at = 0; at < orbit.size(); ++at) {
    for (int i = 0; i < datum.rank(); ++i) {
      Weight y = reflect(datum, orbit[at].first, i);
      if (seen.count(y)) continue;
      const int sign = -orbit[at].second;
      seen.emplace(y, sign);
      orbit.emplace_back(std::move(y), sign);
      if (static_cast<long>(orbit.size()) > cap)
        fail(ErrorKind::Capability, "Weyl group of " + datum.algebra.name() + " exceeds " + std::to_string(cap) +
                                        " elements");
    }
  }
  return orbit;
}

}  // namespace

long weyl_group_order(const RootDatum& datum, long cap) {
  return static_cast<long>(signed_orbit(datum, datum.rho, cap).size());
}

ComplexMatrix kp_smatrix(const RootDatum& datum, int ell, int p, const PrecisionCtx& ctx) {
  const RootOfUnityParams params = root_params(datum, ell, p);
  if (!params.uniform)
    fail(ErrorKind::Parameter, "the Weyl-sum S-matrix needs uniform parameters (m | ell)");
  (void)weyl_group_order(datum);
  const SimpleObjectSet objects = simple_objects(datum, ell);
  const int n = objects.size();

  ScopedPrecision scope(ctx);
  // exp(2 pi i j / period) for every phase that can occur.
  const std::int64_t period = datum.formDenominator * ell;
  std::vector<Complex> phases;
  phases.reserve(period);
  for (std::int64_t j = 0; j < period; ++j) phases.push_back(exp_i_pi(Rational(2 * j, period)));

  std::vector<Weight> shifted;
  for (const auto& w : objects.objects) shifted.push_back(w + datum.rho);

  ComplexMatrix s(n);
  const std::int64_t scale = static_cast<std::int64_t>(params.phase) * datum.lengthRatio;
  for (int a = 0; a < n; ++a) {
    const auto orbit = signed_orbit(datum, shifted[a], 10000);
    for (int b = a; b < n; ++b) {
      Complex sum;
      for (const auto& [x, sign] : orbit) {
        std::int64_t j = (-scale * datum.scaled_inner(x, shifted[b])) % period;
        if (j < 0) j += period;
        if (sign > 0)
          sum += phases[j];
        else
          sum -= phases[j];
      }
      s(a, b) = sum;
      s(b, a) = std::move(sum);
    }
  }
  const Complex unit = s(0, 0);
  if (unit.abs() < ctx.tolerance()) fail(ErrorKind::Resonance, "Weyl-sum S-matrix has a vanishing unit entry");
  for (auto& z : s.data) z = z / unit;
  return s;
}

int VerlindeResult::coeff(int i, int j, int k) const {
  for (const auto& c : products[static_cast<std::size_t>(i) * n + j])
    if (c.object == k) return c.multiplicity;
  return 0;
}

VerlindeResult verlinde(const ComplexMatrix& s, const PrecisionCtx&) {
  const int n = s.n;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = std::complex<double>(s(i, j).re.convert_to<double>(), s(i, j).im.convert_to<double>());
  const double d2 = m.row(0).squaredNorm();
  const Eigen::MatrixXcd adjoint = m.adjoint();

  VerlindeResult out;
  out.n = n;
  out.products.assign(static_cast<std::size_t>(n) * n, {});
  for (int l = 0; l < n; ++l) {
    Eigen::RowVectorXcd ratio(n);
    for (int k = 0; k < n; ++k) ratio(k) = m(l, k) / m(0, k);
    const Eigen::MatrixXcd scaled = m * ratio.asDiagonal();
    const Eigen::MatrixXcd nl = scaled * adjoint / d2;  // (N_l)_{mu,nu}
    for (int mu = 0; mu < n; ++mu) {
      auto& chans = out.products[static_cast<std::size_t>(l) * n + mu];
      for (int nu = 0; nu < n; ++nu) {
        const std::complex<double> z = nl(mu, nu);
        const double rounded = std::round(z.real());
        out.maxResidual = std::max({out.maxResidual, std::abs(z.real() - rounded), std::abs(z.imag())});
        if (rounded < 0) fail(ErrorKind::OracleFailure, "Verlinde formula produced a negative coefficient");
        if (rounded > 0) chans.push_back({nu, static_cast<int>(rounded)});
      }
    }
  }
  if (out.maxResidual > 1e-6)
    fail(ErrorKind::OracleFailure, "Verlinde rounding residual " + std::to_string(out.maxResidual) + " exceeds 1e-6");
  return out;
}

ComplexMatrix reconstruct_smatrix(const FusionTable& table, const QDimTable& qtable, const PrecisionCtx& ctx) {
  if (table.algebra != qtable.params.algebra || table.ell != qtable.params.ell ||
      static_cast<int>(qtable.dims.size()) != table.size())
    fail(ErrorKind::Parameter, "fusion table and dimension table describe different categories");
  ScopedPrecision scope(ctx);
  const int n = table.size();
  std::vector<Complex> weighted(n);
  for (int k = 0; k < n; ++k) weighted[k] = qtable.twists[k] * qtable.dims[k];
  ComplexMatrix s(n);
  for (int a = 0; a < n; ++a) {
    const int dual = table.dualIndex[a];
    for (int b = 0; b < n; ++b) {
      Complex sum;
      for (const auto& c : table.product(dual, b)) sum += weighted[c.object] * Real(c.multiplicity);
      s(a, b) = sum * (qtable.twists[a] * qtable.twists[b]).conj();
    }
  }
  return s;
}

InvertibilityReport analyze_invertibility(const ComplexMatrix& s, const PrecisionCtx& ctx) {
  ScopedPrecision scope(ctx);
  const int n = s.n;
  Real d2 = 0;
  for (int k = 0; k < n; ++k) d2 += s(0, k).norm2();

  // G = S S^dagger / D^2, Hermitian.
  std::vector<Complex> g(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Real re = 0, im = 0;
      for (int k = 0; k < n; ++k) {
        const Complex& a = s(i, k);
        const Complex& b = s(j, k);
        re += a.re * b.re + a.im * b.im;
        im += a.im * b.re - a.re * b.im;
      }
      g[static_cast<std::size_t>(i) * n + j] = Complex(re / d2, im / d2);
      g[static_cast<std::size_t>(j) * n + i] = Complex(re / d2, -im / d2);
    }
  }

  InvertibilityReport report;
  const Real threshold = PrecisionCtx::power_of_ten(ctx.toleranceExponent / 2);
  report.unitarityDefect = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex e = g[static_cast<std::size_t>(i) * n + j];
      if (i == j) e.re -= 1;
      const Real a = e.abs();
      if (a > report.unitarityDefect) report.unitarityDefect = a;
    }
  report.minSingularValue = 1;
  if (report.unitarityDefect < threshold) {
    report.invertible = true;
    return report;
  }

  // Eigenvalues of G through its real embedding [[Re, -Im], [Im, Re]]; each is doubled.
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix embed(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex& e = g[static_cast<std::size_t>(i) * n + j];
      embed(i, j) = e.re;
      embed(i + n, j + n) = e.re;
      embed(i, j + n) = -e.im;
      embed(i + n, j) = e.im;
    }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(embed, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::NumericalInstability, "eigenvalue solver failed on S S^dagger");
  const Real lowest = solver.eigenvalues().minCoeff();
  report.minSingularValue = lowest > 0 ? Real(sqrt(lowest)) : Real(0);
  if (report.minSingularValue < threshold) {
    report.invertible = false;
    return report;
  }
  fail(ErrorKind::NumericalInstability,
       "S-matrix invertibility is indeterminate (unitarity defect " + report.unitarityDefect.str(6) +
           ", smallest singular value " + report.minSingularValue.str(6) + "); raise the precision");
}

bool s_invertible(const ComplexMatrix& s, const PrecisionCtx& ctx) { return analyze_invertibility(s, ctx).invertible; }

}  // namespace rtc

#pragma once

// Fusion rules of the truncated category by the affine-folded Racah-Speiser
// procedure (quantum Racah formula), together with Frobenius-Perron data.
//
// For lambda x mu, every weight xi of V(mu) contributes sign(w) * mult(xi) to
// the object w.(lambda + xi + rho) - rho, where w folds the shifted weight into
// the alcove using the simple reflections and the affine reflection in the wall
// m<x, theta'> = ell. Shifted weights on any wall contribute nothing.

#include "rtc/alcove.hpp"
#include "rtc/lie_core.hpp"
#include "rtc/precision.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rtc {

struct Channel {
  int object = 0;
  int multiplicity = 0;

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct FusionTable {
  AlgebraId algebra;
  int ell = 0;
  SimpleObjectSet objects;
  std::vector<std::vector<Channel>> products;  // index i * n + j, channels sorted by object
  std::vector<int> dualIndex;
  std::vector<Real> fpDims;
  Real fpGlobal;

  int size() const { return objects.size(); }
  const std::vector<Channel>& product(int i, int j) const { return products[static_cast<std::size_t>(i) * size() + j]; }
  /// N_{ij}^k
  int coeff(int i, int j, int k) const;
};

/// Folds a shifted weight x = lambda + xi + rho into the open alcove.
/// Returns the sign of the folding element, or 0 when x lies on a wall.
class AffineFolder {
 public:
  AffineFolder(const RootDatum& datum, int ell);

  int fold(std::vector<int>& x) const;

 private:
  const RootDatum& datum_;
  int ell_;
  AffineWall wall_;
  long cap_;
};

/// Classical decomposition V(lambda) (x) V(mu) by Racah-Speiser folding.
std::map<Weight, std::int64_t> classical_tensor(const RootDatum& datum, const Weight& lambda, const Weight& mu);

/// Truncated fusion product lambda x mu at the given ell.
std::map<Weight, std::int64_t> fuse(const RootDatum& datum, int ell, const Weight& lambda, const Weight& mu);

/// Builds the full table (coefficients, duals, FP dimensions). jobs > 1 spreads
/// the (lambda, mu) pairs over worker threads.
FusionTable fusion_table(const RootDatum& datum, int ell, const PrecisionCtx& ctx = {}, int jobs = 1);

/// Recomputes dualIndex, fpDims and fpGlobal from the coefficients.
void finish_fusion_table(FusionTable& table, const PrecisionCtx& ctx);

/// FP dimensions from the common positive eigenvector of sum_lambda N_lambda.
/// Also returns max_i |(N_lambda v)_i / v_i - FPdim(lambda)| / FPdim(lambda).
struct FrobeniusPerron {
  std::vector<Real> dims;
  Real global;
  Real eigenvalue;      // of sum_lambda N_lambda
  Real eigenSpread;     // max relative deviation of the per-row ratios
  long iterations = 0;
};
FrobeniusPerron frobenius_perron(const FusionTable& table, const PrecisionCtx& ctx);

}  // namespace rtc

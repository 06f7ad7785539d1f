#pragma once

// Root-of-unity parameters q = exp(2 pi i p / ell) and the truncated alcove of
// simple objects.
//
// Both alcove conditions are evaluated with the short-root normalized pairing
// m<,>: lambda is a simple object iff m<lambda + rho, theta'> < ell, with
// theta' the highest root when m | ell and the highest short root otherwise.

#include "rtc/lie_core.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace rtc {

struct RootOfUnityParams {
  AlgebraId algebra;
  int ell = 0;
  int p = 1;
  int phase = 1;        // p mod ell in (-ell/2, ell/2]; q^(1/2) = exp(i pi phase / ell)
  bool uniform = true;  // m | ell
  Rational level;       // k = ell/m - g
};

struct SimpleObjectSet {
  std::vector<Weight> objects;  // objects[0] is the unit
  std::unordered_map<Weight, int, WeightHash> index;

  int size() const { return static_cast<int>(objects.size()); }
  bool contains(const Weight& w) const { return index.count(w) != 0; }
  /// Position of w; throws a parameter error when w is not a simple object.
  int position(const Weight& w) const;
};

/// Data for the affine wall m<x, theta'> = ell.
struct AffineWall {
  Weight theta;                         // theta' in Dynkin labels
  std::vector<std::int64_t> pairing;    // m<omega_i, theta'>
  std::int64_t reflectionDivisor = 1;   // m<theta', theta'> / 2
};

AffineWall affine_wall(const RootDatum& datum, int ell);

RootOfUnityParams root_params(const RootDatum& datum, int ell, int p);
/// Convenience overload; builds the root datum.
RootOfUnityParams root_params(AlgebraId algebra, int ell, int p);

/// 1 <= p < ell/2 with gcd(p, ell) = 1, ascending.
std::vector<int> admissible_ps(int ell);

/// ell for an integer level: ell = m (k + g).
int ell_from_level(const RootDatum& datum, int k);

SimpleObjectSet simple_objects(const RootDatum& datum, int ell);

}  // namespace rtc

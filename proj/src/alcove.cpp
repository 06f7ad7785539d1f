#include "rtc/alcove.hpp"

#include "rtc/error.hpp"

#include <algorithm>
#include <numeric>

namespace rtc {

int SimpleObjectSet::position(const Weight& w) const {
  const auto it = index.find(w);
  if (it == index.end()) fail(ErrorKind::Parameter, "weight " + w.to_string() + " is not a simple object");
  return it->second;
}

AffineWall affine_wall(const RootDatum& datum, int ell) {
  const int m = datum.lengthRatio;
  const bool uniform = ell % m == 0;
  AffineWall wall;
  wall.theta = uniform ? datum.highestRoot : *datum.highestShortRoot;
  const PositiveRoot* root = nullptr;
  for (const auto& pr : datum.positiveRoots)
    if (pr.weightCoords == wall.theta) root = &pr;
  if (!root) fail(ErrorKind::Internal, "highest root missing from the positive roots");
  wall.pairing = root->scaledPairing;
  const Rational half = root->halfSquare * m;  // m<theta', theta'>/2
  if (half.denominator() != 1) fail(ErrorKind::Internal, "non-integral wall normalization");
  wall.reflectionDivisor = half.numerator();
  return wall;
}

RootOfUnityParams root_params(const RootDatum& datum, int ell, int p) {
  if (ell < 2) fail(ErrorKind::Inadmissible, "ell must be at least 2");
  if (p == 0 || std::gcd(p, ell) != 1)
    fail(ErrorKind::Inadmissible, "gcd(p,ell) must be 1 (p=" + std::to_string(p) + ", ell=" + std::to_string(ell) + ")");
  RootOfUnityParams params;
  params.algebra = datum.algebra;
  params.ell = ell;
  params.p = p;
  params.phase = ((p % ell) + ell) % ell;
  if (2 * params.phase > ell) params.phase -= ell;
  params.uniform = ell % datum.lengthRatio == 0;
  params.level = Rational(ell, datum.lengthRatio) - datum.dualCoxeter;
  // Rejects ell for which even the unit is outside the alcove.
  const AffineWall wall = affine_wall(datum, ell);
  std::int64_t base = 0;
  for (int i = 0; i < datum.rank(); ++i) base += wall.pairing[i];
  if (base >= ell)
    fail(ErrorKind::Inadmissible, "ell=" + std::to_string(ell) + " excludes every simple object for " + datum.algebra.name());
  return params;
}

RootOfUnityParams root_params(AlgebraId algebra, int ell, int p) {
  return root_params(build_root_datum(algebra), ell, p);
}

std::vector<int> admissible_ps(int ell) {
  std::vector<int> out;
  for (int p = 1; 2 * p < ell; ++p)
    if (std::gcd(p, ell) == 1) out.push_back(p);
  return out;
}

int ell_from_level(const RootDatum& datum, int k) {
  if (k < 0) fail(ErrorKind::Parameter, "level must be non-negative");
  return datum.lengthRatio * (k + datum.dualCoxeter);
}

SimpleObjectSet simple_objects(const RootDatum& datum, int ell) {
  if (ell < 2) fail(ErrorKind::Inadmissible, "ell must be at least 2");
  const AffineWall wall = affine_wall(datum, ell);
  const int r = datum.rank();
  std::int64_t base = 0;
  for (int i = 0; i < r; ++i) base += wall.pairing[i];
  if (base >= ell)
    fail(ErrorKind::Inadmissible, "ell=" + std::to_string(ell) + " excludes every simple object for " + datum.algebra.name());

  // sum_i pairing_i * lambda_i < ell - base
  SimpleObjectSet set;
  std::vector<int> labels(r, 0);
  const std::int64_t budget = ell - base;
  auto walk = [&](auto&& self, int i, std::int64_t used) -> void {
    if (i == r) {
      set.objects.emplace_back(labels);
      return;
    }
    for (int v = 0; used + v * wall.pairing[i] < budget; ++v) {
      labels[i] = v;
      self(self, i + 1, used + v * wall.pairing[i]);
    }
    labels[i] = 0;
  };
  walk(walk, 0, 0);

  // Graded order: total label sum, then lexicographically decreasing labels.
  std::sort(set.objects.begin(), set.objects.end(), [](const Weight& a, const Weight& b) {
    const int sa = std::accumulate(a.labels.begin(), a.labels.end(), 0);
    const int sb = std::accumulate(b.labels.begin(), b.labels.end(), 0);
    if (sa != sb) return sa < sb;
    return a.labels > b.labels;
  });
  for (int i = 0; i < set.size(); ++i) set.index.emplace(set.objects[i], i);
  return set;
}

}  // namespace rtc

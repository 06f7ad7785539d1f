#pragma once

// Static data for the simple Lie algebras A-G and the root-system combinatorics
// built on it: positive roots, the invariant form, Weyl folding, weight
// multiplicities and duality.
//
// Weights are written in the fundamental-weight basis (Dynkin labels). The
// Cartan matrix follows A_ij = 2 (a_i, a_j) / (a_j, a_j), so the Dynkin labels
// of the simple root a_i form row i of A.

#include "rtc/precision.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rtc {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct AlgebraId {
  Family family = Family::A;
  int rank = 1;

  /// Parses "A".."G" (case-insensitive); throws a parameter error otherwise.
  static Family parse_family(const std::string& text);
  /// Throws a parameter error unless the rank is allowed for the family.
  void validate() const;
  std::string name() const;  // e.g. "G2"

  friend bool operator==(const AlgebraId&, const AlgebraId&) = default;
  friend auto operator<=>(const AlgebraId&, const AlgebraId&) = default;
};

struct Weight {
  std::vector<int> labels;

  Weight() = default;
  explicit Weight(std::vector<int> l) : labels(std::move(l)) {}
  Weight(std::initializer_list<int> l) : labels(l) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }

  int rank() const { return static_cast<int>(labels.size()); }
  int operator[](std::size_t i) const { return labels[i]; }
  int& operator[](std::size_t i) { return labels[i]; }

  bool is_dominant() const;
  bool is_zero() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  std::string to_string() const;  // "(1,0,2)"
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept;
};

struct PositiveRoot {
  std::vector<int> simpleCoeffs;  // alpha = sum_j c_j alpha_j
  Weight weightCoords;            // Dynkin labels of alpha
  Rational halfSquare;            // <alpha, alpha> / 2
  /// m<omega_i, alpha>, integral for every root; m<x, alpha> = sum_i x_i * scaledPairing[i].
  std::vector<std::int64_t> scaledPairing;
  int height() const;
};

using IntMatrix = std::vector<std::vector<int>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

struct RootDatum {
  AlgebraId algebra;
  IntMatrix cartan;
  std::vector<Rational> rootLengthsHalf;  // alpha_j^2 / 2: 1 for long, 1/m for short
  RationalMatrix quadraticForm;           // F_ij = <omega_i, omega_j>
  RationalMatrix inverseCartan;
  std::vector<PositiveRoot> positiveRoots;  // ordered by (height, lexicographic coeffs)
  Weight rho;
  int dualCoxeter = 0;
  int lengthRatio = 1;  // m
  Weight highestRoot;
  std::optional<Weight> highestShortRoot;
  int dimension = 0;

  // F scaled to integers: <x, y> = (x^T formNumerators y) / formDenominator.
  std::vector<std::vector<std::int64_t>> formNumerators;
  std::int64_t formDenominator = 1;

  int rank() const { return algebra.rank; }
  /// Dynkin labels of the simple root alpha_i (row i of the Cartan matrix).
  Weight simple_root(int i) const;
  /// <x, y> * formDenominator, exact.
  std::int64_t scaled_inner(const Weight& x, const Weight& y) const;
  /// m<x, alpha> for a positive root, an integer.
  std::int64_t scaled_pairing(const Weight& x, const PositiveRoot& alpha) const;
  /// Height of a root-lattice element given by Dynkin labels (sum of simple coefficients).
  Rational height(const Weight& x) const;
};

RootDatum build_root_datum(AlgebraId algebra);

/// Exact <x, y>.
Rational inner_product(const RootDatum& datum, const Weight& x, const Weight& y);
/// Exact m<x, y> (the short-root normalized pairing).
Rational scaled_inner_product(const RootDatum& datum, const Weight& x, const Weight& y);

struct DominantImage {
  Weight weight;
  int sign = 0;  // -1, 0 (on a reflection wall) or +1
};

/// s_i(x) = x - x_i * alpha_i.
Weight reflect(const RootDatum& datum, Weight x, int i);
DominantImage make_dominant(const RootDatum& datum, Weight x);

/// Product over positive roots of <lambda+rho, alpha>/<rho, alpha>.
std::int64_t weyl_dimension(const RootDatum& datum, const Weight& lambda);

/// Dominant weights of V(lambda) with multiplicities, by Freudenthal's recursion.
std::map<Weight, std::int64_t> dominant_multiplicities(const RootDatum& datum, const Weight& lambda);
/// Full weight system of V(lambda) with multiplicities.
std::map<Weight, std::int64_t> weight_multiplicities(const RootDatum& datum, const Weight& lambda);

/// lambda* = -w0(lambda), via the diagram automorphism.
Weight dual_weight(const RootDatum& datum, const Weight& lambda);

/// Weight systems shared by concurrent callers. Entries are published once;
/// racing builders may both compute, the first insertion wins.
class WeightSystemCache {
 public:
  using Entries = std::vector<std::pair<Weight, std::int64_t>>;

  explicit WeightSystemCache(const RootDatum& datum) : datum_(datum) {}

  std::shared_ptr<const Entries> get(const Weight& lambda);
  /// Total number of weights counted with multiplicity (= classical dimension).
  std::int64_t dimension(const Weight& lambda);

 private:
  const RootDatum& datum_;
  std::mutex mutex_;
  std::unordered_map<Weight, std::shared_ptr<const Entries>, WeightHash> entries_;
};

}  // namespace rtc

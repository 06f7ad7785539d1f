#include "doctest.h"
#include "oracles.hpp"

#include "rtc/alcove.hpp"
#include "rtc/error.hpp"

#include <algorithm>

using namespace rtc;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

// Brute-force alcove: every dominant weight with labels up to ell, filtered by
// m<lambda + rho, theta'> < ell with the pairing read from the quadratic form.
std::vector<Weight> brute_alcove(const RootDatum& d, int ell) {
  const Weight theta = ell % d.lengthRatio == 0 ? d.highestRoot : *d.highestShortRoot;
  std::vector<Weight> out;
  std::vector<int> labels(d.rank(), 0);
  while (true) {
    const Weight w(labels);
    if (Rational(d.lengthRatio) * inner_product(d, w + d.rho, theta) < Rational(ell)) out.push_back(w);
    int i = 0;
    while (i < d.rank() && ++labels[i] > ell) labels[i++] = 0;
    if (i == d.rank()) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("alcove") {
  TEST_CASE("root parameters") {
    const auto b3 = root_params(AlgebraId{Family::B, 3}, 14, 3);
    CHECK(b3.uniform);
    CHECK(b3.level == Rational(2));
    const auto c2 = root_params(AlgebraId{Family::C, 2}, 7, 2);
    CHECK_FALSE(c2.uniform);
    CHECK(c2.level == Rational(1, 2));
    CHECK(kind_of([] { root_params(AlgebraId{Family::G, 2}, 9, 3); }) == ErrorKind::Inadmissible);
    CHECK(kind_of([] { root_params(AlgebraId{Family::G, 2}, 5, 1); }) == ErrorKind::Inadmissible);
    // Trivial categories are admissible.
    const auto g2 = root_params(AlgebraId{Family::G, 2}, 7, 1);
    CHECK(g2.level == Rational(-5, 3));
  }

  TEST_CASE("admissible p") {
    CHECK(admissible_ps(15) == std::vector<int>{1, 2, 4, 7});
    CHECK(admissible_ps(4) == std::vector<int>{1});
    CHECK(admissible_ps(14) == std::vector<int>{1, 3, 5});
    CHECK(admissible_ps(2) == std::vector<int>{});
  }

  TEST_CASE("examples") {
    const RootDatum a1 = build_root_datum({Family::A, 1});
    CHECK(simple_objects(a1, 4).objects == std::vector<Weight>{Weight{0}, Weight{1}, Weight{2}});
    const RootDatum g2 = build_root_datum({Family::G, 2});
    CHECK(simple_objects(g2, 7).objects == std::vector<Weight>{Weight{0, 0}});
    CHECK(simple_objects(g2, 15).objects == std::vector<Weight>{Weight{0, 0}, Weight{0, 1}});
    const RootDatum f4 = build_root_datum({Family::F, 4});
    CHECK(simple_objects(f4, 13).objects == std::vector<Weight>{Weight{0, 0, 0, 0}});
    CHECK(kind_of([&] { simple_objects(g2, 6); }) == ErrorKind::Inadmissible);
  }

  TEST_CASE("alcove agrees with brute force") {
    for (const auto& [a, ells] :
         std::vector<std::pair<AlgebraId, std::vector<int>>>{{{Family::A, 2}, {3, 5, 8}},
                                                             {{Family::B, 3}, {7, 9, 11, 12, 14}},
                                                             {{Family::C, 2}, {5, 6, 7, 9, 10}},
                                                             {{Family::G, 2}, {7, 8, 11, 12, 16, 18}},
                                                             {{Family::D, 4}, {7, 8, 9}}}) {
      const RootDatum d = build_root_datum(a);
      for (int ell : ells) {
        CAPTURE(a.name());
        CAPTURE(ell);
        auto expected = brute_alcove(d, ell);
        auto got = simple_objects(d, ell).objects;
        CHECK(got.front() == Weight::zero(a.rank));
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
      }
    }
  }

  TEST_CASE("level-k counts") {
    const RootDatum a1 = build_root_datum({Family::A, 1});
    for (int k = 0; k <= 10; ++k) CHECK(simple_objects(a1, ell_from_level(a1, k)).size() == k + 1);
    for (int r = 1; r <= 4; ++r) {
      const RootDatum d = build_root_datum({Family::A, r});
      CHECK(simple_objects(d, ell_from_level(d, 1)).size() == r + 1);
      for (int k = 1; k <= 4; ++k)
        CHECK(simple_objects(d, ell_from_level(d, k)).size() == oracle::binomial(k + r, r));
    }
    // C_r level k has the same count as A_r level k (labels with sum <= k).
    const RootDatum c2 = build_root_datum({Family::C, 2});
    for (int k = 1; k <= 4; ++k) CHECK(simple_objects(c2, ell_from_level(c2, k)).size() == oracle::binomial(k + 2, 2));
    // G2 level k: a1 + 2 a2 <= k in the long-root normalization.
    const RootDatum g2 = build_root_datum({Family::G, 2});
    for (int k = 1; k <= 5; ++k) {
      int count = 0;
      for (int a = 0; a <= k; ++a)
        for (int b = 0; 2 * a + 2 * b <= 2 * k; ++b) count += a + 2 * b <= k;
      CHECK(simple_objects(g2, ell_from_level(g2, k)).size() == count);
    }
  }

  TEST_CASE("duality and monotonicity") {
    for (const AlgebraId a : {AlgebraId{Family::A, 3}, AlgebraId{Family::D, 5}, AlgebraId{Family::E, 6}}) {
      const RootDatum d = build_root_datum(a);
      const auto set = simple_objects(d, ell_from_level(d, 2));
      for (const auto& w : set.objects) CHECK(set.contains(dual_weight(d, w)));
    }
    const RootDatum b3 = build_root_datum({Family::B, 3});
    for (int ell : {10, 12, 14}) {
      const auto small = simple_objects(b3, ell);
      const auto big = simple_objects(b3, ell + 2);
      for (const auto& w : small.objects) CHECK(big.contains(w));
    }
    for (int ell : {7, 9, 11}) {
      const auto small = simple_objects(b3, ell);
      const auto big = simple_objects(b3, ell + 2);
      for (const auto& w : small.objects) CHECK(big.contains(w));
    }
  }

  TEST_CASE("position") {
    const RootDatum a1 = build_root_datum({Family::A, 1});
    const auto set = simple_objects(a1, 5);
    CHECK(set.position(Weight{2}) == 2);
    CHECK_THROWS_AS(set.position(Weight{4}), Error);
  }
}

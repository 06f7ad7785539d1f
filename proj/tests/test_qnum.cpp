#include "doctest.h"
#include "oracles.hpp"

#include "rtc/error.hpp"
#include "rtc/qnum.hpp"

using namespace rtc;

namespace {

Real rel(const Real& a, const Real& b) { return abs(a - b) / abs(b); }

}  // namespace

TEST_SUITE("qnum") {
  TEST_CASE("su(2) level 2") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum d = build_root_datum({Family::A, 1});
    const auto params = root_params(d, 4, 1);
    CHECK(rel(qdim(d, params, Weight{1}, ctx), sqrt(Real(2))) < Real("1e-28"));
    CHECK(qdim(d, params, Weight{0}, ctx) == 1);
    CHECK(twist_exponent(d, params, Weight{1}) == Rational(3, 8));
    CHECK(twist_exponent(d, params, Weight{2}) == Rational(1));
    const Complex t = twist(d, params, Weight{1}, ctx);
    CHECK(abs(t.re - cos(pi() * 3 / 8)) < Real("1e-28"));
    CHECK(abs(t.im - sin(pi() * 3 / 8)) < Real("1e-28"));

    const auto g = global_quantities(d, params, ctx);
    CHECK(abs(g.table.globalDim - 4) < Real("1e-28"));
    const Complex expectedPlus = exp_i_pi(Rational(3, 8)) * Real(2);
    CHECK((g.pPlus - expectedPlus).abs() < Real("1e-28"));
    CHECK(g.residual() < Real("1e-28"));
  }

  TEST_CASE("golden ratio at G2 ell=15") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum d = build_root_datum({Family::G, 2});
    const Real phi = (1 + sqrt(Real(5))) / 2;
    for (int p : {1, 4}) CHECK(rel(qdim(d, root_params(d, 15, p), Weight{0, 1}, ctx), phi) < Real("1e-28"));
    for (int p : {2, 7}) CHECK(rel(qdim(d, root_params(d, 15, p), Weight{0, 1}, ctx), 1 - phi) < Real("1e-28"));
    // The sine-product form written out by hand.
    const Real deg = pi() / 180;
    const Real direct = sin(24 * deg) * sin(84 * deg) * sin(144 * deg) / (sin(12 * deg) * sin(48 * deg) * sin(72 * deg));
    CHECK(rel(direct, phi) < Real("1e-28"));
  }

  TEST_CASE("A3 ell=5 p=2") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum d = build_root_datum({Family::A, 3});
    const auto params = root_params(d, 5, 2);
    const auto g = global_quantities(d, params, ctx);
    REQUIRE(g.table.dims.size() == 4);
    const std::vector<int> signs{1, -1, 1, -1};
    for (int i = 0; i < 4; ++i) CHECK(abs(g.table.dims[i] - signs[i]) < Real("1e-28"));
    CHECK(abs(g.table.globalDim - 4) < Real("1e-28"));
    CHECK((g.pPlus - Complex(Real(2), Real(-2))).abs() < Real("1e-28"));
    const Complex prod = g.pPlus * g.pMinus;
    CHECK(abs(prod.re - 8) < Real("1e-28"));
    CHECK(abs(prod.im) < Real("1e-28"));
    CHECK(twist_exponent(d, params, Weight{0, 1, 0}) == Rational(0));
    CHECK(twist_exponent(d, params, Weight{1, 0, 0}) == Rational(3, 2));
  }

  TEST_CASE("trivial categories") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum d = build_root_datum({Family::G, 2});
    for (int p : {1, 2, 3}) {
      const auto g = global_quantities(d, root_params(d, 7, p), ctx);
      CHECK(g.table.globalDim == 1);
      CHECK(g.pPlus.re == 1);
      CHECK(g.pMinus.re == 1);
    }
  }

  TEST_CASE("sl(n) dimensions agree with the partition formula") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    for (int r = 1; r <= 4; ++r) {
      const RootDatum d = build_root_datum({Family::A, r});
      for (int k = 1; k <= 4; ++k) {
        const int ell = ell_from_level(d, k);
        const auto objects = simple_objects(d, ell);
        for (int p : admissible_ps(ell)) {
          const auto params = root_params(d, ell, p);
          for (const auto& w : objects.objects) {
            const long double expected = oracle::sl_qdim(w.labels, ell, p);
            CHECK(std::abs(qdim_double(d, params, w) - static_cast<double>(expected)) < 1e-12);
            CHECK(std::abs(qdim(d, params, w, ctx).convert_to<long double>() - expected) < 1e-15L);
          }
        }
      }
    }
  }

  TEST_CASE("su(2) global dimension closed form") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum d = build_root_datum({Family::A, 1});
    for (int ell = 3; ell <= 20; ++ell) {
      const auto g = global_quantities(d, root_params(d, ell, 1), ctx);
      const Real s = sin(pi() / ell);
      CHECK(rel(g.table.globalDim, Real(ell) / (2 * s * s)) < Real("1e-27"));
    }
  }

  TEST_CASE("classical limit") {
    // For ell large, d(lambda) approaches the Weyl dimension.
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum g2 = build_root_datum({Family::G, 2});
    const auto params = root_params(g2, 300001, 1);
    CHECK(abs(qdim(g2, params, Weight{0, 1}, ctx) - 7) < Real("1e-6"));
    CHECK(abs(qdim(g2, params, Weight{1, 0}, ctx) - 14) < Real("1e-6"));
  }

  TEST_CASE("duals, unit modulus, conjugation") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    for (const AlgebraId a : {AlgebraId{Family::A, 3}, AlgebraId{Family::D, 5}, AlgebraId{Family::E, 6}}) {
      const RootDatum d = build_root_datum(a);
      const int ell = ell_from_level(d, 2);
      const auto objects = simple_objects(d, ell);
      for (int p : admissible_ps(ell)) {
        const auto params = root_params(d, ell, p);
        const auto conj = root_params(d, ell, ell - p);
        const auto g = global_quantities(d, params, objects, ctx);
        for (int i = 0; i < objects.size(); ++i) {
          const int j = objects.position(dual_weight(d, objects.objects[i]));
          CHECK(abs(g.table.dims[i] - g.table.dims[j]) < ctx.tolerance());
          CHECK(g.table.twistExponents[i] == g.table.twistExponents[j]);
          CHECK(abs(g.table.twists[i].abs() - 1) < ctx.tolerance());
          CHECK(abs(qdim(d, conj, objects.objects[i], ctx) - g.table.dims[i]) < ctx.tolerance());
        }
      }
    }
  }

  TEST_CASE("uniform p=1 dimensions are positive") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    for (const AlgebraId a : {AlgebraId{Family::B, 3}, AlgebraId{Family::C, 3}, AlgebraId{Family::F, 4},
                              AlgebraId{Family::G, 2}, AlgebraId{Family::E, 6}}) {
      const RootDatum d = build_root_datum(a);
      for (int k = 1; k <= 2; ++k) {
        const int ell = ell_from_level(d, k);
        const auto g = global_quantities(d, root_params(d, ell, 1), ctx);
        for (const auto& x : g.table.dims) CHECK(x > 0);
      }
    }
  }

  TEST_CASE("p and ell - p are complex conjugates") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    for (const auto& [a, ell] : std::vector<std::pair<AlgebraId, int>>{
             {{Family::A, 2}, 8}, {{Family::B, 3}, 11}, {{Family::G, 2}, 16}}) {
      const RootDatum d = build_root_datum(a);
      const auto objects = simple_objects(d, ell);
      for (int p : admissible_ps(ell)) {
        CAPTURE(a.name());
        CAPTURE(p);
        const auto x = global_quantities(d, root_params(d, ell, p), objects, ctx);
        const auto y = global_quantities(d, root_params(d, ell, ell - p), objects, ctx);
        for (int i = 0; i < objects.size(); ++i) {
          CHECK(abs(x.table.dims[i] - y.table.dims[i]) < ctx.tolerance());
          CHECK((x.table.twists[i].conj() - y.table.twists[i]).abs() < ctx.tolerance());
        }
        CHECK((x.pPlus.conj() - y.pPlus).abs() < ctx.tolerance() * x.table.globalDim);
      }
    }
  }

  TEST_CASE("errors") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum a1 = build_root_datum({Family::A, 1});
    CHECK_THROWS_AS(qdim(a1, root_params(a1, 4, 1), Weight{3}, ctx), Error);
    CHECK_THROWS_AS(qdim(a1, root_params(a1, 4, 1), Weight{-1}, ctx), Error);
    CHECK_THROWS_AS((PrecisionCtx{10, 5}.validate()), Error);
  }
}

#include "doctest.h"

#include "rtc/error.hpp"
#include "rtc/smatrix.hpp"

using namespace rtc;

namespace {

ComplexMatrix real_matrix(const std::vector<std::vector<Real>>& rows) {
  ComplexMatrix s(static_cast<int>(rows.size()));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) s(i, j) = Complex(rows[i][j]);
  return s;
}

Real max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  Real m = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, (a.data[i] - b.data[i]).abs());
  return m;
}

}  // namespace

TEST_SUITE("smatrix") {
  TEST_CASE("Ising S-matrix from both routes") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum a1 = build_root_datum({Family::A, 1});
    const Real r2 = sqrt(Real(2));
    const ComplexMatrix ising = real_matrix({{1, r2, 1}, {r2, 0, -r2}, {1, -r2, 1}});

    const ComplexMatrix kp = kp_smatrix(a1, 4, 1, ctx);
    CHECK(max_diff(kp, ising) < Real("1e-28"));

    const FusionTable t = fusion_table(a1, 4, ctx);
    const auto g = global_quantities(a1, root_params(a1, 4, 1), t.objects, ctx);
    const ComplexMatrix rec = reconstruct_smatrix(t, g.table, ctx);
    CHECK(max_diff(rec, ising) < Real("1e-28"));
    CHECK(rec(1, 1).abs() < Real("1e-28"));

    CHECK(s_invertible(ising, ctx));
    const VerlindeResult v = verlinde(ising, ctx);
    CHECK(v.coeff(1, 1, 0) == 1);
    CHECK(v.coeff(1, 1, 2) == 1);
    CHECK(v.coeff(1, 1, 1) == 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(v.coeff(0, i, j) == (i == j));
  }

  TEST_CASE("row of the unit gives the quantum dimensions") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    for (const auto& [a, ell] : std::vector<std::pair<AlgebraId, int>>{
             {{Family::A, 2}, 4}, {{Family::A, 2}, 7}, {{Family::C, 2}, 10}, {{Family::G, 2}, 18}, {{Family::B, 3}, 12}}) {
      CAPTURE(a.name());
      const RootDatum d = build_root_datum(a);
      const ComplexMatrix s = kp_smatrix(d, ell, 1, ctx);
      const auto g = global_quantities(d, root_params(d, ell, 1), ctx);
      for (int j = 0; j < s.n; ++j) CHECK((s(0, j) - Complex(g.table.dims[j])).abs() < ctx.tolerance());
      const auto report = analyze_invertibility(s, ctx);
      CHECK(report.invertible);
      CHECK(report.unitarityDefect < ctx.tolerance());
    }
  }

  TEST_CASE("reconstruction matches the Weyl sum") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    for (const auto& [a, ell, p] : std::vector<std::tuple<AlgebraId, int, int>>{
             {{Family::A, 2}, 7, 1}, {{Family::A, 2}, 7, 2}, {{Family::G, 2}, 15, 2}, {{Family::C, 2}, 12, 5}}) {
      CAPTURE(a.name());
      CAPTURE(p);
      const RootDatum d = build_root_datum(a);
      const ComplexMatrix kp = kp_smatrix(d, ell, p, ctx);
      const FusionTable t = fusion_table(d, ell, ctx);
      const auto g = global_quantities(d, root_params(d, ell, p), t.objects, ctx);
      const ComplexMatrix rec = reconstruct_smatrix(t, g.table, ctx);
      CHECK(max_diff(kp, rec) < ctx.tolerance());
    }
  }

  TEST_CASE("non-modular witness") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum a3 = build_root_datum({Family::A, 3});
    const FusionTable t = fusion_table(a3, 5, ctx);
    const auto g = global_quantities(a3, root_params(a3, 5, 2), t.objects, ctx);
    const ComplexMatrix s = reconstruct_smatrix(t, g.table, ctx);
    // Rows of 1 and (0,1,0) coincide.
    for (int j = 0; j < 4; ++j) CHECK((s(0, j) - s(2, j)).abs() < Real("1e-28"));
    const auto report = analyze_invertibility(s, ctx);
    CHECK_FALSE(report.invertible);
    CHECK(report.minSingularValue < Real("1e-10"));
  }

  TEST_CASE("trivial and indeterminate matrices") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    CHECK(s_invertible(real_matrix({{1}}), ctx));
    // A 2x2 matrix whose normalized Gram matrix is neither I nor singular.
    try {
      (void)s_invertible(real_matrix({{1, 1}, {1, Real("0.5")}}), ctx);
      FAIL("indeterminate matrix accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NumericalInstability);
    }
  }

  TEST_CASE("Verlinde recovers fusion from reconstructed S") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    for (const auto& [a, ell, p] : std::vector<std::tuple<AlgebraId, int, int>>{
             {{Family::G, 2}, 11, 2}, {{Family::B, 3}, 9, 1}, {{Family::F, 4}, 17, 3}, {{Family::A, 2}, 7, 2}}) {
      CAPTURE(a.name());
      const RootDatum d = build_root_datum(a);
      const FusionTable t = fusion_table(d, ell, ctx);
      const auto g = global_quantities(d, root_params(d, ell, p), t.objects, ctx);
      const ComplexMatrix s = reconstruct_smatrix(t, g.table, ctx);
      REQUIRE(s_invertible(s, ctx));
      const VerlindeResult v = verlinde(s, ctx);
      CHECK(v.maxResidual < 1e-6);
      for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j) CHECK(v.products[i * t.size() + j] == t.product(i, j));
    }
  }

  TEST_CASE("Weyl-sum preconditions") {
    const PrecisionCtx ctx;
    ScopedPrecision scope(ctx);
    const RootDatum g2 = build_root_datum({Family::G, 2});
    try {
      (void)kp_smatrix(g2, 16, 1, ctx);
      FAIL("non-uniform Weyl sum accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parameter);
    }
    try {
      (void)kp_smatrix(build_root_datum({Family::E, 7}), 38, 1, ctx);
      FAIL("E7 Weyl sum accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Capability);
    }
  }
}

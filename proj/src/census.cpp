#include "rtc/census.hpp"

#include "rtc/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

namespace rtc {

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) fail(ErrorKind::Parameter, "Jacobi symbol needs an odd positive modulus");
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

namespace {

bool in(int p, std::initializer_list<int> set) { return std::find(set.begin(), set.end(), p) != set.end(); }

[[noreturn]] void uncovered(AlgebraId algebra, int ell) {
  fail(ErrorKind::Coverage, "no closed-form row for " + algebra.name() + " at ell = " + std::to_string(ell));
}

ExpectedFlags uniform_flags(AlgebraId a, int k, int p) {
  const int r = a.rank;
  ExpectedFlags f;
  auto only = [&](std::initializer_list<int> unitary, std::initializer_list<int> pseudo) {
    f.unitary = in(p, unitary);
    f.pseudoUnitary = in(p, pseudo);
  };
  switch (a.family) {
    case Family::A:
      f.modular = std::gcd(p, r + 1) == 1;
      if (k == 1) {
        f.unitary = p % 2 == 1;
        f.pseudoUnitary = true;
      } else {
        only({1}, {1});
      }
      break;
    case Family::B:
      f.modular = true;
      if (k == 1) {
        f.unitary = p % 8 == 1 || p % 8 == 7;
        f.pseudoUnitary = true;
      } else if (k == 2) {
        f.unitary = jacobi(2 * r + 1, p) == 1;
        f.pseudoUnitary = true;
      } else {
        only({1}, {1});
      }
      break;
    case Family::C:
      f.modular = true;
      f.unitary = p == 1;
      if (k == 1)
        f.pseudoUnitary = p == 1 || (r % 2 == 0 && p == r + 1);
      else if (k == 2)
        f.pseudoUnitary = p == 1 || (r == 2 && p == 3);
      else
        f.pseudoUnitary = p == 1;
      break;
    case Family::D:
      f.modular = p % 2 == 1;
      if (k == 1) {
        f.unitary = r % 4 == 0 || r % 4 == 1 || p % 2 == 1;
        f.pseudoUnitary = true;
      } else if (k == 2) {
        f.unitary = jacobi(r, p) == 1;
        f.pseudoUnitary = true;
      } else {
        only({1}, {1});
      }
      break;
    case Family::E:
      if (r == 6) {
        f.modular = p % 3 != 0;
        if (k == 1)
          f.unitary = f.pseudoUnitary = true;
        else if (k == 3)
          only({1, 4}, {1, 4});
        else
          only({1}, {1});
      } else if (r == 7) {
        f.modular = p % 2 == 1;
        if (k == 1) {
          f.unitary = p % 2 == 1;
          f.pseudoUnitary = true;
        } else if (k == 2) {
          only({1, 9}, {1, 9});
        } else if (k == 3) {
          only({1, 5}, {1, 4, 5});
        } else {
          only({1}, {1});
        }
      } else {
        f.modular = true;
        if (k == 1) {
          f.unitary = f.pseudoUnitary = true;
        } else if (k == 2) {
          f.unitary = in(p, {1, 7, 9, 15});
          f.pseudoUnitary = true;
        } else if (k == 3) {
          only({1, 10}, {1, 10});
        } else if (k == 5) {
          only({1, 6}, {1, 6});
        } else {
          only({1}, {1});
        }
      }
      break;
    case Family::F:
      f.modular = true;
      if (k == 1)
        only({1, 9}, {1, 9});
      else if (k == 3 || k == 4)
        only({1, 5}, {1, 5});
      else
        only({1}, {1});
      break;
    case Family::G:
      f.modular = true;
      if (k == 1)
        only({1, 4}, {1, 4});
      else if (k == 3)
        only({1, 4, 5}, {1, 4, 5});
      else if (k == 4)
        only({1, 5}, {1, 5});
      else
        only({1}, {1});
      break;
  }
  return f;
}

ExpectedFlags nonuniform_flags(AlgebraId a, int ell, int p) {
  const int r = a.rank;
  ExpectedFlags f;
  switch (a.family) {
    case Family::B:
      f.modular = r % 2 == 1 && p % 2 == 1;
      if (ell == 2 * r + 1) {
        f.unitary = r % 4 == 0 || (r % 4 == 1 && p % 2 == 1) || (r % 4 == 3 && p % 2 == 0);
        f.pseudoUnitary = true;
      } else if (ell == 2 * r + 3) {
        f.unitary = (r % 2 == 1 && p == (r + 1) / 2) || (r % 4 == 0 && p == (r + 2) / 2);
        f.pseudoUnitary = (r % 2 == 1 && p == (r + 1) / 2) || (r % 2 == 0 && p == (r + 2) / 2);
      } else if (ell < 2 * r + 1) {
        uncovered(a, ell);
      }
      break;
    case Family::C:
      f.modular = false;
      f.unitary = false;
      if (ell == 2 * r + 1)
        f.pseudoUnitary = true;
      else if (ell == 2 * r + 3)
        f.pseudoUnitary = p == 2;
      else if (ell < 2 * r + 1)
        uncovered(a, ell);
      break;
    case Family::F:
      f.modular = true;
      if (ell == 13)
        f.unitary = f.pseudoUnitary = true;
      else if (ell == 17)
        f.unitary = f.pseudoUnitary = p == 3;
      else if (ell < 13)
        uncovered(a, ell);
      break;
    case Family::G:
      f.modular = true;
      if (ell == 7) {
        f.unitary = f.pseudoUnitary = true;
      } else if (ell == 8) {
        f.pseudoUnitary = true;
      } else if (ell == 11) {
        f.unitary = f.pseudoUnitary = p == 2;
      } else if (ell == 13 || ell == 14) {
        f.unitary = f.pseudoUnitary = p == 3;
      } else if (ell < 7) {
        uncovered(a, ell);
      }
      break;
    default:
      uncovered(a, ell);
  }
  return f;
}

int length_ratio(Family f) {
  switch (f) {
    case Family::B:
    case Family::C:
    case Family::F:
      return 2;
    case Family::G:
      return 3;
    default:
      return 1;
  }
}

int dual_coxeter(AlgebraId a) {
  switch (a.family) {
    case Family::A:
      return a.rank + 1;
    case Family::B:
      return 2 * a.rank - 1;
    case Family::C:
      return a.rank + 1;
    case Family::D:
      return 2 * a.rank - 2;
    case Family::E:
      return a.rank == 6 ? 12 : a.rank == 7 ? 18 : 30;
    case Family::F:
      return 9;
    case Family::G:
      return 4;
  }
  return 0;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  const int threads = std::max(1, std::min(jobs, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
}

std::string point_name(const GridPoint& pt) {
  return pt.algebra.name() + " ell=" + std::to_string(pt.ell) + " p=" + std::to_string(pt.p);
}

double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace

ExpectedFlags expected_flags(AlgebraId algebra, int ell, int p) {
  algebra.validate();
  if (ell < 2 || p <= 0 || std::gcd(p, ell) != 1)
    fail(ErrorKind::Inadmissible, "ell and p must satisfy ell >= 2, gcd(p, ell) = 1");
  p %= ell;
  p = std::min(p, ell - p);
  const int m = length_ratio(algebra.family);
  if (ell % m != 0) return nonuniform_flags(algebra, ell, p);
  const int k = ell / m - dual_coxeter(algebra);
  if (k < 1) uncovered(algebra, ell);
  return uniform_flags(algebra, k, p);
}

Classification classify_detailed(const RootDatum& datum, std::shared_ptr<const FusionTable> table, int p,
                                 const PrecisionCtx& ctx, const ClassifyOptions& options) {
  ctx.validate();
  if (!table || table->algebra != datum.algebra) fail(ErrorKind::Parameter, "fusion table does not match the algebra");
  ScopedPrecision scope(ctx);
  const RootOfUnityParams params = root_params(datum, table->ell, p);

  Classification out{.record = {},
                     .quantities = global_quantities(datum, params, table->objects, ctx),
                     .table = table,
                     .smatrix = std::nullopt,
                     .invertibility = std::nullopt};
  auto& rec = out.record;
  rec.algebra = datum.algebra;
  rec.ell = table->ell;
  rec.p = p;
  rec.k = params.level;
  rec.uniform = params.uniform;
  rec.nObjects = table->size();
  rec.digitsUsed = ctx.digits;

  const Real tol = ctx.tolerance();
  const auto& dims = out.quantities.table.dims;
  const int n = table->size();

  rec.unitary = true;
  if (options.fastUnitarity) {
    for (int i = 0; i < n && rec.unitary; ++i) {
      const double d = qdim_double(datum, params, table->objects.objects[i]);
      rec.unitary = std::abs(d) > 1e-9 ? d > 0 : dims[i] > tol;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      if (abs(dims[i]) <= tol)
        fail(ErrorKind::Degenerate, "quantum dimension of " + table->objects.objects[i].to_string() + " vanishes");
      if (dims[i] < 0) rec.unitary = false;
    }
  }

  rec.pseudoUnitary = true;
  for (int i = 0; i < n; ++i)
    if (abs(abs(dims[i]) - table->fpDims[i]) > tol * table->fpDims[i]) rec.pseudoUnitary = false;

  Real residual = out.quantities.residual();
  if (residual > tol / 100 && residual < tol * 100) {
    if (!options.allowPrecisionRetry)
      throw PrecisionRetryNeeded(ErrorKind::NumericalInstability, "Gauss-sum residual near threshold");
    const PrecisionCtx wide{2 * ctx.digits, ctx.toleranceExponent};
    ScopedPrecision widen(wide);
    out.quantities = global_quantities(datum, params, table->objects, wide);
    residual = out.quantities.residual();
    rec.digitsUsed = wide.digits;
  }
  rec.pseudoModular = residual < tol;

  Real minDim = dims[0];
  for (const auto& d : dims) minDim = std::min(minDim, d);
  rec.minQdim = to_double(minDim);
  rec.globalDim = to_double(out.quantities.table.globalDim);
  rec.fpGlobal = to_double(table->fpGlobal);
  rec.pResidual = to_double(residual);

  if (options.withModularOracle && n <= options.oracleMaxObjects) {
    try {
      out.smatrix = reconstruct_smatrix(*table, out.quantities.table, ctx);
      out.invertibility = analyze_invertibility(*out.smatrix, ctx);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NumericalInstability) throw;
      if (!options.allowPrecisionRetry)
        throw PrecisionRetryNeeded(ErrorKind::NumericalInstability, "S-matrix invertibility near threshold");
      const PrecisionCtx wide{2 * ctx.digits, ctx.toleranceExponent};
      ScopedPrecision widen(wide);
      const GlobalQuantities q = global_quantities(datum, params, table->objects, wide);
      out.smatrix = reconstruct_smatrix(*table, q.table, wide);
      out.invertibility = analyze_invertibility(*out.smatrix, wide);
      rec.digitsUsed = wide.digits;
    }
    rec.modularOracle = out.invertibility->invertible;
  }
  return out;
}

ClassificationRecord classify(AlgebraId algebra, int ell, int p, const PrecisionCtx& ctx,
                              const ClassifyOptions& options) {
  algebra.validate();
  ScopedPrecision scope(ctx);
  const RootDatum datum = build_root_datum(algebra);
  (void)root_params(datum, ell, p);
  auto table = std::make_shared<const FusionTable>(fusion_table(datum, ell, ctx));
  return classify_detailed(datum, std::move(table), p, ctx, options).record;
}

std::vector<GridPoint> expand_grid(const GridSpec& grid) {
  std::vector<GridPoint> points;
  for (const auto& entry : grid.entries) {
    if (entry.rankMin > entry.rankMax) fail(ErrorKind::Parameter, "grid rank range is empty");
    for (int rank = entry.rankMin; rank <= entry.rankMax; ++rank) {
      const AlgebraId algebra{entry.family, rank};
      algebra.validate();
      std::set<int> ells(entry.ells.begin(), entry.ells.end());
      if (entry.levels) {
        if (entry.levels->first < 1 || entry.levels->first > entry.levels->second)
          fail(ErrorKind::Parameter, "grid level range must satisfy 1 <= lo <= hi");
        const int m = length_ratio(entry.family);
        for (int k = entry.levels->first; k <= entry.levels->second; ++k) ells.insert(m * (k + dual_coxeter(algebra)));
      }
      for (int ell : ells) {
        if (ell < 2) fail(ErrorKind::Parameter, "grid ell must be at least 2");
        for (int p : admissible_ps(ell)) points.push_back({algebra, ell, p});
      }
    }
  }
  return points;
}

SweepReport sweep(const GridSpec& grid, const PrecisionCtx& ctx, FusionCache& cache, const RecordSink& sink,
                  const SweepOptions& options) {
  ctx.validate();
  ScopedPrecision scope(ctx);
  const std::vector<GridPoint> points = expand_grid(grid);
  const int count = static_cast<int>(points.size());

  // One fusion table per (algebra, ell), built in parallel before classification.
  std::vector<std::pair<AlgebraId, int>> keys;
  for (const auto& pt : points)
    if (keys.empty() || keys.back() != std::make_pair(pt.algebra, pt.ell)) keys.emplace_back(pt.algebra, pt.ell);
  std::vector<std::string> tableErrors(keys.size());
  parallel_for(static_cast<int>(keys.size()), options.jobs, [&](int i) {
    try {
      (void)cache.datum(keys[i].first);
      (void)cache.get(keys[i].first, keys[i].second, ctx);
    } catch (const std::exception& e) {
      tableErrors[i] = e.what();
    }
  });
  auto tableError = [&](const GridPoint& pt) -> const std::string& {
    const auto it = std::find(keys.begin(), keys.end(), std::make_pair(pt.algebra, pt.ell));
    return tableErrors[it - keys.begin()];
  };

  ClassifyOptions copts;
  copts.withModularOracle = grid.withOracle;
  copts.oracleMaxObjects = grid.oracleMaxObjects;
  copts.fastUnitarity = options.fastUnitarity;

  std::vector<std::optional<ClassificationRecord>> records(count);
  std::vector<std::string> errors(count);
  std::vector<char> retry(count, 0);
  auto run = [&](int i, bool allowRetry) {
    const GridPoint& pt = points[i];
    if (!tableError(pt).empty()) {
      errors[i] = tableError(pt);
      return;
    }
    ClassifyOptions o = copts;
    o.allowPrecisionRetry = allowRetry;
    try {
      const auto datum = cache.datum(pt.algebra);
      records[i] = classify_detailed(*datum, cache.get(pt.algebra, pt.ell, ctx), pt.p, ctx, o).record;
    } catch (const PrecisionRetryNeeded&) {
      retry[i] = 1;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  parallel_for(count, options.jobs, [&](int i) { run(i, false); });
  for (int i = 0; i < count; ++i)
    if (retry[i]) run(i, true);

  SweepReport report;
  for (int i = 0; i < count; ++i) {
    const GridPoint& pt = points[i];
    if (!records[i]) {
      report.issues.push_back({SweepIssue::Kind::Error, pt, errors[i]});
      continue;
    }
    const ClassificationRecord& rec = *records[i];
    if (sink) sink(rec);
    report.records.push_back(rec);

    if (rec.modularOracle && *rec.modularOracle != rec.pseudoModular)
      report.issues.push_back({SweepIssue::Kind::Conjecture, pt,
                               "pseudo-modular=" + std::to_string(rec.pseudoModular) +
                                   " but S invertible=" + std::to_string(*rec.modularOracle)});
    ExpectedFlags expected;
    try {
      expected = expected_flags(pt.algebra, pt.ell, pt.p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Coverage) throw;
      continue;
    }
    ++report.compared;
    std::string diff;
    auto check = [&](const char* name, bool got, bool want) {
      if (got != want) diff += std::string(diff.empty() ? "" : ", ") + name + " computed " + (got ? "true" : "false");
    };
    check("unitary", rec.unitary, expected.unitary);
    check("pseudo_unitary", rec.pseudoUnitary, expected.pseudoUnitary);
    check("pseudo_modular", rec.pseudoModular, expected.modular);
    if (rec.modularOracle) check("modular_oracle", *rec.modularOracle, expected.modular);
    if (!diff.empty()) report.issues.push_back({SweepIssue::Kind::Mismatch, pt, diff});
  }
  return report;
}

std::string format_level(const Rational& k) {
  if (k.denominator() == 1) return std::to_string(k.numerator());
  return std::to_string(k.numerator()) + "/" + std::to_string(k.denominator());
}

std::string issue_kind_name(SweepIssue::Kind kind) {
  switch (kind) {
    case SweepIssue::Kind::Mismatch:
      return "mismatch";
    case SweepIssue::Kind::Error:
      return "error";
    case SweepIssue::Kind::Conjecture:
      return "conjecture";
  }
  return "?";
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_csv_header(std::ostream& os) {
  os << "family,rank,ell,p,k,uniform,n_objects,unitary,pseudo_unitary,pseudo_modular,modular_oracle,"
        "min_qdim,global_dim,fp_global,p_residual,digits\n";
}

void write_csv_row(std::ostream& os, const ClassificationRecord& r) {
  os << static_cast<char>(r.algebra.family) << ',' << r.algebra.rank << ',' << r.ell << ',' << r.p << ','
     << format_level(r.k) << ',' << int(r.uniform) << ',' << r.nObjects << ',' << int(r.unitary) << ','
     << int(r.pseudoUnitary) << ',' << int(r.pseudoModular) << ','
     << (r.modularOracle ? std::to_string(int(*r.modularOracle)) : "") << ',' << fmt(r.minQdim) << ','
     << fmt(r.globalDim) << ',' << fmt(r.fpGlobal) << ',' << fmt(r.pResidual) << ',' << r.digitsUsed << '\n';
}

void write_csv(std::ostream& os, const std::vector<ClassificationRecord>& records) {
  write_csv_header(os);
  for (const auto& r : records) write_csv_row(os, r);
}

void write_json(std::ostream& os, const std::vector<ClassificationRecord>& records) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : records) {
    doc.push_back({
        {"family", std::string(1, static_cast<char>(r.algebra.family))},
        {"rank", r.algebra.rank},
        {"ell", r.ell},
        {"p", r.p},
        {"k", format_level(r.k)},
        {"uniform", r.uniform},
        {"n_objects", r.nObjects},
        {"unitary", r.unitary},
        {"pseudo_unitary", r.pseudoUnitary},
        {"pseudo_modular", r.pseudoModular},
        {"modular_oracle", r.modularOracle ? nlohmann::json(*r.modularOracle) : nlohmann::json(nullptr)},
        {"min_qdim", r.minQdim},
        {"global_dim", r.globalDim},
        {"fp_global", r.fpGlobal},
        {"p_residual", r.pResidual},
        {"digits", r.digitsUsed},
    });
  }
  os << doc.dump(2) << '\n';
}

void write_issue_report(std::ostream& os, const SweepReport& report) {
  os << report.records.size() << " records, " << report.compared << " compared, " << report.issues.size()
     << " issues\n";
  for (const auto& issue : report.issues)
    os << "  [" << issue_kind_name(issue.kind) << "] " << point_name(issue.point) << ": " << issue.message << '\n';
}

}  // namespace rtc

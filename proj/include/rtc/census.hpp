#pragma once

// Classification of parameter points (algebra, ell, p) and the sweep engine.
//
//   unitary        all quantum dimensions positive
//   pseudoUnitary  |d(lambda)| = FPdim(lambda) for every simple object
//   pseudoModular  p+ p- = D^2
//   modularOracle  the reconstructed S-matrix is invertible (optional)
//
// expected_flags() encodes the closed-form unitarity/modularity conditions for
// every uniform level k >= 1 and every non-uniform ell, and serves as the
// regression oracle for sweeps.

#include "rtc/cache.hpp"
#include "rtc/error.hpp"
#include "rtc/fusion.hpp"
#include "rtc/qnum.hpp"
#include "rtc/smatrix.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rtc {

/// Jacobi symbol (a|n) for odd n >= 1.
int jacobi(std::int64_t a, std::int64_t n);

struct ClassificationRecord {
  AlgebraId algebra;
  int ell = 0;
  int p = 0;
  Rational k;
  bool uniform = true;
  int nObjects = 0;
  bool unitary = false;
  bool pseudoUnitary = false;
  bool pseudoModular = false;
  std::optional<bool> modularOracle;
  double minQdim = 0;
  double globalDim = 0;
  double fpGlobal = 0;
  double pResidual = 0;
  int digitsUsed = 0;
};

struct ExpectedFlags {
  bool unitary = false;
  bool pseudoUnitary = false;
  bool modular = false;

  friend bool operator==(const ExpectedFlags&, const ExpectedFlags&) = default;
};

/// Closed-form flags; coverage error when no table row applies (e.g. k = 0).
ExpectedFlags expected_flags(AlgebraId algebra, int ell, int p);

struct ClassifyOptions {
  bool withModularOracle = true;
  int oracleMaxObjects = 200;
  bool fastUnitarity = false;
  /// When false, a residual within two orders of magnitude of the threshold
  /// raises PrecisionRetryNeeded instead of changing the global precision.
  bool allowPrecisionRetry = true;
};

/// Raised when a decision needs the doubled-digit recomputation but the caller
/// disallowed changing precision (parallel sweeps).
class PrecisionRetryNeeded : public Error {
 public:
  using Error::Error;
};

struct Classification {
  ClassificationRecord record;
  GlobalQuantities quantities;
  std::shared_ptr<const FusionTable> table;
  std::optional<ComplexMatrix> smatrix;  // reconstructed S when the oracle ran
  std::optional<InvertibilityReport> invertibility;
};

Classification classify_detailed(const RootDatum& datum, std::shared_ptr<const FusionTable> table, int p,
                                 const PrecisionCtx& ctx, const ClassifyOptions& options = {});

ClassificationRecord classify(AlgebraId algebra, int ell, int p, const PrecisionCtx& ctx = {},
                              const ClassifyOptions& options = {});

struct GridEntry {
  Family family = Family::A;
  int rankMin = 1;
  int rankMax = 1;
  std::optional<std::pair<int, int>> levels;  // uniform k range, inclusive
  std::vector<int> ells;                      // explicit ell values
};

struct GridSpec {
  std::vector<GridEntry> entries;
  bool withOracle = true;
  int oracleMaxObjects = 200;
};

struct GridPoint {
  AlgebraId algebra;
  int ell = 0;
  int p = 0;
};

/// Grid files: a TOML subset (top-level with_oracle / oracle_max_objects and
/// [[entry]] tables with family, ranks = [lo, hi], levels = [lo, hi], ells = [...])
/// or the equivalent JSON object {"with_oracle": .., "entries": [{..}]}.
GridSpec parse_grid_toml(const std::string& text);
GridSpec parse_grid_json(const std::string& text);
/// Dispatches on the extension (.json, otherwise TOML).
GridSpec load_grid(const std::string& path);

/// Expands the grid in deterministic order (entry, rank, ell, p).
std::vector<GridPoint> expand_grid(const GridSpec& grid);

struct SweepIssue {
  enum class Kind { Mismatch, Error, Conjecture };
  Kind kind = Kind::Error;
  GridPoint point;
  std::string message;
};

struct SweepReport {
  std::vector<ClassificationRecord> records;
  std::vector<SweepIssue> issues;
  int compared = 0;  // records with a closed-form row
};

struct SweepOptions {
  int jobs = 1;
  bool fastUnitarity = false;
};

using RecordSink = std::function<void(const ClassificationRecord&)>;

SweepReport sweep(const GridSpec& grid, const PrecisionCtx& ctx, FusionCache& cache, const RecordSink& sink = {},
                  const SweepOptions& options = {});

std::string format_level(const Rational& k);
std::string issue_kind_name(SweepIssue::Kind kind);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const ClassificationRecord& r);
void write_csv(std::ostream& os, const std::vector<ClassificationRecord>& records);
void write_json(std::ostream& os, const std::vector<ClassificationRecord>& records);
void write_issue_report(std::ostream& os, const SweepReport& report);

}  // namespace rtc

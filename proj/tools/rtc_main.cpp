// Command-line front end: classify single points, sweep grids, inspect fusion
// rules, reproduce closed-form table rows and manage the fusion cache.

#include "rtc/census.hpp"
#include "rtc/error.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace rtc;

enum Exit { kOk = 0, kParameters = 1, kInstability = 2, kMismatch = 3 };

struct Common {
  std::string family = "A";
  int rank = 1;
  int ell = 0;
  int k = 0;
  int p = 1;
  int digits = 30;
  int toleranceExponent = 0;
  std::string cacheDir;
  std::string format = "table";
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool noOracle = false;
  bool withSmatrix = false;

  PrecisionCtx ctx() const {
    PrecisionCtx c = PrecisionCtx::with_digits(digits);
    if (toleranceExponent > 0) c.toleranceExponent = toleranceExponent;
    c.validate();
    return c;
  }
  AlgebraId algebra() const {
    AlgebraId a{AlgebraId::parse_family(family), rank};
    a.validate();
    return a;
  }
  int resolve_ell(const RootDatum& datum) const {
    if ((ell > 0) == (k > 0)) fail(ErrorKind::Parameter, "give exactly one of --ell or --k");
    return ell > 0 ? ell : ell_from_level(datum, k);
  }
  FusionCache cache() const { return FusionCache(cacheDir.empty() ? default_cache_dir() : std::filesystem::path(cacheDir)); }
};

void add_point_options(CLI::App* app, Common& c, bool withP) {
  app->add_option("--family", c.family, "Cartan family A..G")->required();
  app->add_option("--rank", c.rank, "rank")->required();
  app->add_option("--ell", c.ell, "root-of-unity order, q = exp(2 pi i p / ell)");
  app->add_option("--k", c.k, "integer level; sets ell = m (k + g)");
  if (withP) app->add_option("--p", c.p, "numerator p, gcd(p, ell) = 1");
}

void add_precision_options(CLI::App* app, Common& c) {
  app->add_option("--digits", c.digits, "working precision in decimal digits")->check(CLI::Range(15, 2000));
  app->add_option("--tolerance-exponent", c.toleranceExponent, "decisions use tolerance 10^-e (default digits - 10)");
}

Weight parse_weight(const std::string& text, int rank) {
  std::vector<int> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) labels.push_back(std::stoi(item));
  if (static_cast<int>(labels.size()) != rank)
    fail(ErrorKind::Parameter, "weight '" + text + "' needs " + std::to_string(rank) + " labels");
  return Weight(labels);
}

std::string yes(bool b) { return b ? "yes" : "no"; }

int run_classify(const Common& c) {
  const AlgebraId algebra = c.algebra();
  const PrecisionCtx ctx = c.ctx();
  ScopedPrecision scope(ctx);
  FusionCache cache = c.cache();
  const auto datum = cache.datum(algebra);
  const int ell = c.resolve_ell(*datum);
  (void)root_params(*datum, ell, c.p);
  ClassifyOptions options;
  options.withModularOracle = !c.noOracle;
  const Classification cl = classify_detailed(*datum, cache.get(algebra, ell, ctx, c.jobs), c.p, ctx, options);
  const auto& r = cl.record;

  if (c.format == "csv") {
    write_csv(std::cout, {r});
    return kOk;
  }
  if (c.format == "json") {
    write_json(std::cout, {r});
    return kOk;
  }
  std::cout << algebra.name() << "  ell=" << r.ell << "  p=" << r.p << "  k=" << format_level(r.k)
            << (r.uniform ? "  (uniform)" : "  (non-uniform)") << "\n"
            << "objects          " << r.nObjects << "\n"
            << "unitary          " << yes(r.unitary) << "\n"
            << "pseudo-unitary   " << yes(r.pseudoUnitary) << "\n"
            << "pseudo-modular   " << yes(r.pseudoModular) << "\n"
            << "S invertible     " << (r.modularOracle ? yes(*r.modularOracle) : std::string("not computed")) << "\n"
            << "D^2              " << cl.quantities.table.globalDim.str(c.digits) << "\n"
            << "FPdim(C)         " << cl.table->fpGlobal.str(c.digits) << "\n"
            << "|p+p- - D^2|/D^2 " << cl.quantities.residual().str(6) << "\n"
            << "digits used      " << r.digitsUsed << "\n\n";
  std::cout << "object            d                                  FPdim                  theta = exp(i pi r)\n";
  const auto& q = cl.quantities.table;
  for (int i = 0; i < r.nObjects; ++i) {
    char line[256];
    std::snprintf(line, sizeof line, "%-16s  %-33s  %-21s  r = %s",
                  cl.table->objects.objects[i].to_string().c_str(), q.dims[i].str(30).c_str(),
                  cl.table->fpDims[i].str(18).c_str(),
                  (std::to_string(q.twistExponents[i].numerator()) + "/" +
                   std::to_string(q.twistExponents[i].denominator()))
                      .c_str());
    std::cout << line << "\n";
  }
  if (c.withSmatrix) {
    const ComplexMatrix s = cl.smatrix ? *cl.smatrix : reconstruct_smatrix(*cl.table, q, ctx);
    std::cout << "\nS (normalized S_11 = 1)\n";
    for (int i = 0; i < s.n; ++i) {
      for (int j = 0; j < s.n; ++j)
        std::cout << "  " << s(i, j).re.str(8) << (s(i, j).im < 0 ? "" : "+") << s(i, j).im.str(8) << "i";
      std::cout << "\n";
    }
  }
  return kOk;
}

int run_census(const Common& c, const std::string& gridPath, const std::string& out, bool fastUnitarity) {
  const GridSpec grid = [&] {
    GridSpec g = load_grid(gridPath);
    if (c.noOracle) g.withOracle = false;
    return g;
  }();
  const PrecisionCtx ctx = c.ctx();
  FusionCache cache = c.cache();
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) fail(ErrorKind::Parameter, "cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  const bool csv = c.format != "json";
  if (csv) write_csv_header(os);
  SweepOptions options;
  options.jobs = c.jobs;
  options.fastUnitarity = fastUnitarity;
  const SweepReport report =
      sweep(grid, ctx, cache, csv ? RecordSink([&](const ClassificationRecord& r) { write_csv_row(os, r); }) : RecordSink{},
            options);
  if (!csv) write_json(os, report.records);
  write_issue_report(std::cerr, report);
  for (const auto& issue : report.issues)
    if (issue.kind != SweepIssue::Kind::Error) return kMismatch;
  return report.issues.empty() ? kOk : kInstability;
}

int run_fusion(const Common& c, const std::string& lambda, const std::string& mu) {
  const AlgebraId algebra = c.algebra();
  const PrecisionCtx ctx = c.ctx();
  ScopedPrecision scope(ctx);
  FusionCache cache = c.cache();
  const auto datum = cache.datum(algebra);
  const int ell = c.resolve_ell(*datum);
  if (!lambda.empty() || !mu.empty()) {
    if (lambda.empty() || mu.empty()) fail(ErrorKind::Parameter, "give both --lambda and --mu");
    const auto product = fuse(*datum, ell, parse_weight(lambda, algebra.rank), parse_weight(mu, algebra.rank));
    for (const auto& [w, n] : product) std::cout << n << " x " << w.to_string() << "\n";
    return kOk;
  }
  const auto table = cache.get(algebra, ell, ctx, c.jobs);
  if (c.format == "json") {
    std::cout << fusion_table_to_json(*table).dump(2) << "\n";
    return kOk;
  }
  std::cout << algebra.name() << " ell=" << ell << ": " << table->size() << " objects\n";
  for (int i = 0; i < table->size(); ++i)
    std::cout << "  [" << i << "] " << table->objects.objects[i].to_string() << "  dual [" << table->dualIndex[i]
              << "]  FPdim " << table->fpDims[i].str(18) << "\n";
  for (int i = 0; i < table->size(); ++i)
    for (int j = i; j < table->size(); ++j) {
      std::cout << "  [" << i << "] x [" << j << "] =";
      bool first = true;
      for (const auto& ch : table->product(i, j)) {
        std::cout << (first ? " " : " + ") << (ch.multiplicity > 1 ? std::to_string(ch.multiplicity) : "") << "["
                  << ch.object << "]";
        first = false;
      }
      std::cout << "\n";
    }
  return kOk;
}

int run_table(const Common& c) {
  const AlgebraId algebra = c.algebra();
  const PrecisionCtx ctx = c.ctx();
  ScopedPrecision scope(ctx);
  FusionCache cache = c.cache();
  const auto datum = cache.datum(algebra);
  const int ell = c.resolve_ell(*datum);
  const auto table = cache.get(algebra, ell, ctx, c.jobs);
  ClassifyOptions options;
  options.withModularOracle = !c.noOracle;
  int exit = kOk;
  std::printf("%s ell=%d  %-5s %-22s %-22s %-22s %s\n", algebra.name().c_str(), ell, "p", "unitary", "pseudo-unitary",
              "modular", "S invertible");
  for (int p : admissible_ps(ell)) {
    const auto r = classify_detailed(*datum, table, p, ctx, options).record;
    const ExpectedFlags e = expected_flags(algebra, ell, p);
    auto cell = [](bool got, bool want) {
      return std::string(got ? "yes" : "no") + " (expected " + (want ? "yes" : "no") + ")" + (got == want ? "" : " !!");
    };
    std::printf("%*s  %-5d %-22s %-22s %-22s %s\n", static_cast<int>(algebra.name().size() + 4 + std::to_string(ell).size()),
                "", p, cell(r.unitary, e.unitary).c_str(), cell(r.pseudoUnitary, e.pseudoUnitary).c_str(),
                cell(r.pseudoModular, e.modular).c_str(),
                r.modularOracle ? (*r.modularOracle ? "yes" : "no") : "-");
    if (r.unitary != e.unitary || r.pseudoUnitary != e.pseudoUnitary || r.pseudoModular != e.modular ||
        (r.modularOracle && *r.modularOracle != e.modular))
      exit = kMismatch;
  }
  return exit;
}

int run_cache(const Common& c, const std::string& action) {
  const std::filesystem::path dir = c.cacheDir.empty() ? default_cache_dir() : std::filesystem::path(c.cacheDir);
  if (!std::filesystem::exists(dir)) {
    std::cout << dir.string() << ": empty\n";
    return kOk;
  }
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    if (action == "clear")
      std::filesystem::remove(entry.path());
    else
      std::cout << entry.path().filename().string() << "  " << entry.file_size() << " bytes\n";
  }
  if (action == "clear") std::cout << "removed " << count << " entries from " << dir.string() << "\n";
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter:
    case ErrorKind::Inadmissible:
    case ErrorKind::Coverage:
    case ErrorKind::Cache:
      return kParameters;
    default:
      return kInstability;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitarity, pseudo-unitarity and modularity of quantum-group categories at roots of unity"};
  app.require_subcommand(1);
  Common c;
  std::string gridPath, out, lambda, mu, cacheAction = "list";
  bool fastUnitarity = false;

  auto* classify = app.add_subcommand("classify", "classify one (algebra, ell, p)");
  add_point_options(classify, c, true);
  add_precision_options(classify, c);
  classify->add_option("--format", c.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  classify->add_option("--cache-dir", c.cacheDir, "fusion cache directory");
  classify->add_option("--jobs", c.jobs, "threads for the fusion table")->check(CLI::PositiveNumber);
  classify->add_flag("--no-oracle", c.noOracle, "skip the S-matrix invertibility test");
  classify->add_flag("--with-smatrix", c.withSmatrix, "print the reconstructed S-matrix");

  auto* census = app.add_subcommand("census", "sweep a grid file and emit one record per point");
  census->add_option("--grid", gridPath, "grid file (.toml or .json)")->required()->check(CLI::ExistingFile);
  census->add_option("--out", out, "output file (default stdout)");
  census->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  census->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  census->add_option("--cache-dir", c.cacheDir, "fusion cache directory");
  census->add_flag("--no-oracle", c.noOracle, "skip the S-matrix invertibility test");
  census->add_flag("--fast-unitarity", fastUnitarity, "decide signs in double precision");
  add_precision_options(census, c);

  auto* fusion = app.add_subcommand("fusion", "print fusion rules");
  add_point_options(fusion, c, false);
  add_precision_options(fusion, c);
  fusion->add_option("--lambda", lambda, "comma-separated Dynkin labels");
  fusion->add_option("--mu", mu, "comma-separated Dynkin labels");
  fusion->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  fusion->add_option("--cache-dir", c.cacheDir, "fusion cache directory");
  fusion->add_option("--jobs", c.jobs, "threads")->check(CLI::PositiveNumber);

  auto* table = app.add_subcommand("table", "compare every admissible p at one ell with the closed-form row");
  add_point_options(table, c, false);
  add_precision_options(table, c);
  table->add_option("--cache-dir", c.cacheDir, "fusion cache directory");
  table->add_option("--jobs", c.jobs, "threads for the fusion table")->check(CLI::PositiveNumber);
  table->add_flag("--no-oracle", c.noOracle, "skip the S-matrix invertibility test");

  auto* cache = app.add_subcommand("cache", "list or clear the fusion cache");
  cache->add_option("action", cacheAction, "list or clear")->check(CLI::IsMember({"list", "clear"}));
  cache->add_option("--cache-dir", c.cacheDir, "fusion cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParameters;
  }

  try {
    if (*classify) return run_classify(c);
    if (*census) return run_census(c, gridPath, out, fastUnitarity);
    if (*fusion) return run_fusion(c, lambda, mu);
    if (*table) return run_table(c);
    if (*cache) return run_cache(c, cacheAction);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParameters;
  }
  return kOk;
}

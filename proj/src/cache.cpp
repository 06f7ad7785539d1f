#include "rtc/cache.hpp"

#include "rtc/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace rtc {

namespace fs = std::filesystem;

nlohmann::json fusion_table_to_json(const FusionTable& table) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& w : table.objects.objects) objects.push_back(w.labels);
  nlohmann::json coeffs = nlohmann::json::array();
  const int n = table.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& c : table.product(i, j)) coeffs.push_back({i, j, c.object, c.multiplicity});
  return {
      {"version", kFusionCacheVersion},
      {"family", std::string(1, static_cast<char>(table.algebra.family))},
      {"rank", table.algebra.rank},
      {"ell", table.ell},
      {"objects", std::move(objects)},
      {"duals", table.dualIndex},
      {"coeffs", std::move(coeffs)},
  };
}

FusionTable fusion_table_from_json(const nlohmann::json& doc, const RootDatum& datum, const PrecisionCtx& ctx) {
  try {
    if (doc.at("version").get<int>() != kFusionCacheVersion)
      fail(ErrorKind::Cache, "unsupported cache version " + doc.at("version").dump());
    AlgebraId algebra{AlgebraId::parse_family(doc.at("family").get<std::string>()), doc.at("rank").get<int>()};
    if (algebra != datum.algebra) fail(ErrorKind::Cache, "cache entry is for " + algebra.name());

    FusionTable table;
    table.algebra = algebra;
    table.ell = doc.at("ell").get<int>();
    table.objects = simple_objects(datum, table.ell);
    const auto stored = doc.at("objects").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(stored.size()) != table.size())
      fail(ErrorKind::Cache, "cache entry has the wrong number of objects");
    for (int i = 0; i < table.size(); ++i)
      if (stored[i] != table.objects.objects[i].labels)
        fail(ErrorKind::Cache, "cache entry object order disagrees with the alcove");

    const std::size_t n = table.size();
    table.products.assign(n * n, {});
    for (const auto& row : doc.at("coeffs")) {
      const auto c = row.get<std::vector<int>>();
      if (c.size() != 4 || c[0] < 0 || c[1] < 0 || c[2] < 0 || static_cast<std::size_t>(std::max({c[0], c[1], c[2]})) >= n ||
          c[3] <= 0)
        fail(ErrorKind::Cache, "malformed coefficient " + row.dump());
      table.products[c[0] * n + c[1]].push_back({c[2], c[3]});
    }
    for (auto& chans : table.products)
      std::sort(chans.begin(), chans.end(), [](const Channel& a, const Channel& b) { return a.object < b.object; });
    finish_fusion_table(table, ctx);
    if (doc.at("duals").get<std::vector<int>>() != table.dualIndex)
      fail(ErrorKind::Cache, "cache entry duals are inconsistent with its coefficients");
    return table;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Cache, std::string("malformed cache entry: ") + e.what());
  }
}

void save_fusion_table(const FusionTable& table, const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) fail(ErrorKind::Cache, "cannot write " + tmp.string());
    out << fusion_table_to_json(table).dump() << '\n';
  }
  fs::rename(tmp, file);
}

FusionTable load_fusion_table(const fs::path& file, const RootDatum& datum, const PrecisionCtx& ctx) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::Cache, "cannot read " + file.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Cache, file.string() + ": " + e.what());
  }
  return fusion_table_from_json(doc, datum, ctx);
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("RTC_CACHE"); env && *env) return env;
  return ".rtc-cache";
}

FusionCache::FusionCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {}

std::shared_ptr<const RootDatum> FusionCache::datum(AlgebraId algebra) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = data_.find(algebra); it != data_.end()) return it->second;
  }
  auto built = std::make_shared<const RootDatum>(build_root_datum(algebra));
  std::lock_guard lock(mutex_);
  return data_.emplace(algebra, std::move(built)).first->second;
}

fs::path FusionCache::file_for(AlgebraId algebra, int ell) const {
  const fs::path base = dir_ ? *dir_ : default_cache_dir();
  return base / (algebra.name() + "_l" + std::to_string(ell) + ".json");
}

int FusionCache::builds() const {
  std::lock_guard lock(mutex_);
  return builds_;
}

std::shared_ptr<const FusionTable> FusionCache::get(AlgebraId algebra, int ell, const PrecisionCtx& ctx, int jobs) {
  const auto key = std::make_pair(algebra, ell);
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  const auto d = datum(algebra);
  std::shared_ptr<const FusionTable> table;
  bool built = false;
  if (dir_ && fs::exists(file_for(algebra, ell))) {
    table = std::make_shared<const FusionTable>(load_fusion_table(file_for(algebra, ell), *d, ctx));
  } else {
    table = std::make_shared<const FusionTable>(fusion_table(*d, ell, ctx, jobs));
    built = true;
    if (dir_) save_fusion_table(*table, file_for(algebra, ell));
  }
  std::lock_guard lock(mutex_);
  if (built) ++builds_;
  return tables_.emplace(key, std::move(table)).first->second;
}

}  // namespace rtc

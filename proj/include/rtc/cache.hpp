#pragma once

// Fusion-table cache: an in-memory map shared by concurrent workers, optionally
// backed by one JSON file per (family, rank, ell).
//
// File schema (version 1):
//   {"version": 1, "family": "G", "rank": 2, "ell": 15,
//    "objects": [[0,0],[0,1]], "duals": [0,1],
//    "coeffs": [[i_lambda, i_mu, i_nu, N], ...]}
// coeffs lists every non-zero N_{lambda,mu}^nu. Files with another version, or
// whose objects disagree with the alcove, are refused with a cache error.

#include "rtc/fusion.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace rtc {

inline constexpr int kFusionCacheVersion = 1;

nlohmann::json fusion_table_to_json(const FusionTable& table);
/// Rebuilds a table from its serialized form; FP data is recomputed.
FusionTable fusion_table_from_json(const nlohmann::json& doc, const RootDatum& datum, const PrecisionCtx& ctx);

void save_fusion_table(const FusionTable& table, const std::filesystem::path& file);
FusionTable load_fusion_table(const std::filesystem::path& file, const RootDatum& datum, const PrecisionCtx& ctx);

/// Cache directory from RTC_CACHE, else ".rtc-cache".
std::filesystem::path default_cache_dir();

class FusionCache {
 public:
  explicit FusionCache(std::optional<std::filesystem::path> dir = std::nullopt);

  std::shared_ptr<const RootDatum> datum(AlgebraId algebra);
  std::shared_ptr<const FusionTable> get(AlgebraId algebra, int ell, const PrecisionCtx& ctx, int jobs = 1);

  const std::optional<std::filesystem::path>& directory() const { return dir_; }
  std::filesystem::path file_for(AlgebraId algebra, int ell) const;

  /// Number of tables built from scratch (not loaded) by this instance.
  int builds() const;

 private:
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mutex_;
  std::map<AlgebraId, std::shared_ptr<const RootDatum>> data_;
  std::map<std::pair<AlgebraId, int>, std::shared_ptr<const FusionTable>> tables_;
  int builds_ = 0;
};

}  // namespace rtc

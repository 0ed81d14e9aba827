#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "sslforms/hurwitz.hpp"

namespace sslforms::cli {

/// Environment variable naming the cache directory.
inline constexpr const char* kCacheDirEnv = "SSL_FORMS_CACHE_DIR";
inline constexpr const char* kCacheFileName = "hurwitz12.csv";

struct CacheStats {
  bool enabled = false;
  std::string path;
  /// max_n of the file found on disk (0 if none or unreadable).
  std::size_t loaded_max_n = 0;
  /// max_n of the file after this run (0 if nothing was written).
  std::size_t written_max_n = 0;
  bool hit = false;
  bool corrupt = false;
};

/// Serializes a table as "hurwitz12,v1,max_n=N" followed by "n,value" lines.
std::string format_cache(const HurwitzTable& table);
/// Parses the text format. Throws std::runtime_error with a reason on any defect.
HurwitzTable parse_cache(const std::string& text);

/// Resolution order: explicit directory, then $SSL_FORMS_CACHE_DIR, then
/// $XDG_CACHE_HOME/sslforms, then $HOME/.cache/sslforms.
std::optional<std::filesystem::path> default_cache_dir();

/// Loads, extends and atomically rewrites the on-disk table (temp file + rename).
/// With no directory the cache is disabled and tables live in memory only.
class HurwitzCache {
 public:
  HurwitzCache(std::optional<std::filesystem::path> dir, std::ostream& warnings);

  /// A table covering n <= max_n, loading or extending the file as needed.
  std::shared_ptr<const HurwitzTable> table(std::size_t max_n);
  /// Writes `table` back if it covers more than the file does.
  void persist(const std::shared_ptr<const HurwitzTable>& table);

  const CacheStats& stats() const noexcept { return stats_; }

 private:
  void load();
  void write(const HurwitzTable& table);

  std::optional<std::filesystem::path> file_;
  std::ostream& warn_;
  std::shared_ptr<const HurwitzTable> current_;
  CacheStats stats_;
  bool loaded_ = false;
};

}  // namespace sslforms::cli

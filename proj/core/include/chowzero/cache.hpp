#ifndef CHOWZERO_CACHE_HPP_
#define CHOWZERO_CACHE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "chowzero/engine.hpp"

namespace chowzero {

inline constexpr int kCacheSchemaVersion = 1;

struct CacheKey {
  int n = 0;
  int degree = 0;
  std::string locus;
  int schema = kCacheSchemaVersion;
  int revision = kAlgorithmRevision;

  // "schema=..;n=..;d=..;locus=..;rev=.."
  std::string canonical() const;
  // 16 hex digits of the FNV-1a hash of canonical().
  std::string digest() const;
};

std::uint64_t fnv1a64(const std::string& text);

// Directory of JSON files, one per key. Every stored file repeats its full
// key, so a digest collision reads as a miss rather than a wrong answer.
// I/O problems are reported through the warning callback and treated as
// misses; nothing here throws on a broken cache.
class ResultCache {
 public:
  using Warn = std::function<void(const std::string&)>;

  explicit ResultCache(std::filesystem::path dir, Warn warn = {});

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<ChowResult> get(const CacheKey& key) const;
  void put(const CacheKey& key, const ChowResult& value) const;

  std::filesystem::path path_for(const CacheKey& key) const;

 private:
  void warn(const std::string& message) const;

  std::filesystem::path dir_;
  Warn warn_;
};

}  // namespace chowzero

#endif  // CHOWZERO_CACHE_HPP_

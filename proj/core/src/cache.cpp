#include "chowzero/cache.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <unistd.h>

#include "chowzero/json_io.hpp"
#include "json.hpp"

namespace chowzero {
namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string CacheKey::canonical() const {
  return "schema=" + std::to_string(schema) + ";n=" + std::to_string(n) +
         ";d=" + std::to_string(degree) + ";locus=" + locus + ";rev=" + std::to_string(revision);
}

std::string CacheKey::digest() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(canonical());
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 0xf];
  return out;
}

ResultCache::ResultCache(std::filesystem::path dir, Warn warn)
    : dir_(std::move(dir)), warn_(std::move(warn)) {}

void ResultCache::warn(const std::string& message) const {
  if (warn_) warn_(message);
}

std::filesystem::path ResultCache::path_for(const CacheKey& key) const {
  return dir_ / (key.digest() + ".json");
}

std::optional<ChowResult> ResultCache::get(const CacheKey& key) const {
  const auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::ifstream in(path);
  if (!in) {
    warn("cache: cannot read " + path.string());
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    auto j = nlohmann::json::parse(buffer.str());
    if (j.at("key").get<std::string>() != key.canonical()) return std::nullopt;
    auto result = result_from_json(j.at("result").dump());
    if (result.n != key.n || result.degree != key.degree || result.locus != key.locus) {
      return std::nullopt;
    }
    return result;
  } catch (const std::exception& e) {
    warn("cache: ignoring unreadable entry " + path.string() + ": " + e.what());
    return std::nullopt;
  }
}

void ResultCache::put(const CacheKey& key, const ChowResult& value) const {
  // Entries are immutable; an unreadable one is replaced.
  if (get(key)) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    warn("cache: cannot create " + dir_.string() + ": " + ec.message());
    return;
  }
  nlohmann::ordered_json j;
  j["key"] = key.canonical();
  j["result"] = nlohmann::ordered_json::parse(result_to_json(value));
  j["created_at"] = utc_timestamp();
  // Unique temp name per writer; rename is atomic within a directory.
  static std::atomic<unsigned> counter{0};
  std::ostringstream tmp_name;
  tmp_name << ".tmp-" << key.digest() << '-' << ::getpid() << '-'
           << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << '-' << counter++ << '-' << std::chrono::steady_clock::now().time_since_epoch().count();
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << '\n';
    out.flush();
    if (!out) {
      warn("cache: cannot write " + tmp.string());
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, path_for(key), ec);
  if (ec) {
    warn("cache: cannot publish " + path_for(key).string() + ": " + ec.message());
    std::filesystem::remove(tmp, ec);
  }
}

}  // namespace chowzero

#include "stmod/io/cache.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace stmod::io {

namespace fs = std::filesystem;

std::string CacheKey::canonical() const {
  std::ostringstream s;
  s << "v" << kSchemaVersion << "|" << group << "|" << field.p << "^" << field.m << "[";
  for (auto c : field.modulus) s << c << ",";
  s << "]|" << kind << "|" << seed << "|" << params;
  return s.str();
}

std::string CacheKey::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::path_of(const CacheKey& key) const { return dir_ / (key.kind + "-" + key.digest() + ".json"); }

std::optional<json> Cache::load(const CacheKey& key) const {
  std::ifstream in(path_of(key));
  if (!in) return std::nullopt;
  // the key is stored alongside the payload so that a digest collision or a
  // truncated file reads as a miss
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("key", std::string{}) != key.canonical() || !j.contains("payload")) return std::nullopt;
  return j.at("payload");
}

bool Cache::store(const CacheKey& key, const json& payload) const {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return false;
  const fs::path target = path_of(key);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return false;
    out << json{{"key", key.canonical()}, {"payload", payload}}.dump();
    if (!out.good()) {
      fs::remove(tmp, ec);
      return false;
    }
  }
  fs::rename(tmp, target, ec);
  if (!ec) return true;
  fs::remove(tmp, ec);
  return false;
}

}  // namespace stmod::io

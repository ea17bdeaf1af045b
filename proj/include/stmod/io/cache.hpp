#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "stmod/io/serialize.hpp"

namespace stmod::io {

/// What a cache entry is keyed on. `params` holds anything else the
/// computation depends on (ranges, option values).
struct CacheKey {
  std::string group;  // canonical_form of the group
  FieldSpec field;
  std::string kind;   // command or computation name
  std::uint64_t seed = 1;
  std::string params;

  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string digest() const;
};

/// Content-addressed store of JSON blobs, one file per entry. Writes go
/// through a temporary file and a rename, so concurrent processes never
/// see partial entries. Unreadable or mismatching entries count as misses.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  std::optional<json> load(const CacheKey& key) const;
  /// Returns false when the entry could not be written; never throws on IO.
  bool store(const CacheKey& key, const json& payload) const;
  std::filesystem::path path_of(const CacheKey& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace stmod::io

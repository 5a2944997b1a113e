#pragma once

// On-disk cache of conjugacy class tables.
//
// File layout (text):
//   asai-class-cache <schema>
//   sha256 <hex digest of everything after this line>
//   key <cache key>
//   order <|G|> classes <k>
//   <rep> <size> <member> <member> ...      one line per class
//
// Files with another schema, a bad digest, a different key, or a payload
// that is not a partition of the group are ignored; the caller recomputes.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <openssl/evp.h>

#include "asai/errors.hpp"
#include "asai/group_dsl.hpp"
#include "asai/points.hpp"

namespace asai {

inline constexpr int kCacheSchemaVersion = 1;

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return os.str();
}

inline std::string cache_key(const GroupLaw& law, std::uint64_t q, std::uint32_t m, int schema = kCacheSchemaVersion) {
  std::ostringstream os;
  os << print_group_dsl(law) << "q " << q << "\nm " << m << "\nschema " << schema << "\n";
  return sha256_hex(os.str());
}

inline std::string serialize_class_table(const ClassTable& table, const std::string& key,
                                         int schema = kCacheSchemaVersion) {
  std::ostringstream payload;
  payload << "key " << key << "\n";
  payload << "order " << table.class_of.size() << " classes " << table.size() << "\n";
  for (const auto& c : table.classes) {
    payload << c.rep << ' ' << c.size();
    for (auto x : c.members) payload << ' ' << x;
    payload << '\n';
  }
  const auto body = payload.str();
  return "asai-class-cache " + std::to_string(schema) + "\nsha256 " + sha256_hex(body) + "\n" + body;
}

enum class CacheStatus { kHit, kMissing, kStale, kCorrupt };

struct CacheLoad {
  CacheStatus status = CacheStatus::kMissing;
  std::string message;
  std::optional<ClassTable> table;
};

/// Parses and checks a cache file's contents against `key` and `expected_order`.
inline CacheLoad deserialize_class_table(std::string_view text, const std::string& key, std::uint64_t expected_order,
                                         int schema = kCacheSchemaVersion) {
  auto fail = [](CacheStatus s, std::string msg) { return CacheLoad{s, std::move(msg), std::nullopt}; };
  const auto nl1 = text.find('\n');
  if (nl1 == std::string_view::npos) return fail(CacheStatus::kCorrupt, "truncated header");
  if (text.substr(0, nl1) != "asai-class-cache " + std::to_string(schema)) {
    return fail(CacheStatus::kStale, "schema mismatch");
  }
  const auto nl2 = text.find('\n', nl1 + 1);
  if (nl2 == std::string_view::npos) return fail(CacheStatus::kCorrupt, "truncated header");
  const auto digest_line = text.substr(nl1 + 1, nl2 - nl1 - 1);
  const auto body = text.substr(nl2 + 1);
  if (digest_line != "sha256 " + sha256_hex(body)) return fail(CacheStatus::kCorrupt, "checksum mismatch");

  std::istringstream in{std::string(body)};
  std::string word, file_key;
  std::uint64_t order = 0, count = 0;
  if (!(in >> word >> file_key) || word != "key") return fail(CacheStatus::kCorrupt, "missing key");
  if (file_key != key) return fail(CacheStatus::kStale, "key mismatch");
  std::string w_order, w_classes;
  if (!(in >> w_order >> order >> w_classes >> count) || w_order != "order" || w_classes != "classes") {
    return fail(CacheStatus::kCorrupt, "bad size line");
  }
  if (order != expected_order || count > order) return fail(CacheStatus::kCorrupt, "group order mismatch");

  constexpr std::uint32_t kUnassigned = ~std::uint32_t{0};
  ClassTable table;
  table.class_of.assign(order, kUnassigned);
  for (std::uint64_t c = 0; c < count; ++c) {
    ConjugacyClass cls;
    std::uint64_t size = 0;
    if (!(in >> cls.rep >> size) || size == 0 || size > order) return fail(CacheStatus::kCorrupt, "bad class line");
    cls.members.resize(size);
    for (auto& x : cls.members) {
      if (!(in >> x) || x >= order || table.class_of[x] != kUnassigned) {
        return fail(CacheStatus::kCorrupt, "bad class member");
      }
      table.class_of[x] = static_cast<std::uint32_t>(c);
    }
    if (!std::is_sorted(cls.members.begin(), cls.members.end()) || cls.members.front() != cls.rep) {
      return fail(CacheStatus::kCorrupt, "non-canonical class");
    }
    if (!table.classes.empty() && table.classes.back().rep >= cls.rep) {
      return fail(CacheStatus::kCorrupt, "non-canonical class order");
    }
    table.classes.push_back(std::move(cls));
  }
  for (auto c : table.class_of) {
    if (c == kUnassigned) return fail(CacheStatus::kCorrupt, "classes do not cover the group");
  }
  if (in >> word) return fail(CacheStatus::kCorrupt, "trailing data");
  return {CacheStatus::kHit, "", std::move(table)};
}

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t rejected = 0;
};

/// Directory-backed class table cache. Warnings about ignored files are
/// passed to `warn` when set.
class ClassCache {
 public:
  using Warn = std::function<void(const std::string&)>;

  explicit ClassCache(std::filesystem::path dir, Warn warn = {}) : dir_(std::move(dir)), warn_(std::move(warn)) {
    std::filesystem::create_directories(dir_);
  }

  std::filesystem::path path_for(const std::string& key) const { return dir_ / ("classes-" + key + ".txt"); }

  std::shared_ptr<const ClassTable> get(const FiniteGroupView& view) {
    const auto key = cache_key(view.law(), view.q(), view.m());
    const auto path = path_for(key);
    if (std::ifstream in{path, std::ios::binary}) {
      std::ostringstream buf;
      buf << in.rdbuf();
      auto loaded = deserialize_class_table(buf.str(), key, view.order());
      if (loaded.table) {
        ++stats_.hits;
        return std::make_shared<const ClassTable>(std::move(*loaded.table));
      }
      ++stats_.rejected;
      if (warn_) warn_("ignoring cache file " + path.string() + ": " + loaded.message);
    }
    ++stats_.misses;
    auto table = std::make_shared<const ClassTable>(conjugacy_classes(view));
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
      out << serialize_class_table(*table, key);
      if (!out) {
        if (warn_) warn_("could not write cache file " + tmp);
        return table;
      }
    }
    std::filesystem::rename(tmp, path);
    return table;
  }

  const CacheStats& stats() const { return stats_; }

 private:
  std::filesystem::path dir_;
  Warn warn_;
  CacheStats stats_;
};

}  // namespace asai

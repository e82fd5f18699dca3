#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dfl/prime_table.hpp"

namespace dfl::cli {

// On-disk layout, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "DFL1"
//   4       4     format version (1)
//   8       8     limit
//   16      8     FNV-1a 64-bit hash of the payload bytes
//   24      8     reserved, zero
//   32      ...   (limit + 1) uint32 smallest-prime-factor entries
inline constexpr char kCacheMagic[4] = {'D', 'F', 'L', '1'};
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderSize = 32;
inline constexpr const char* kCacheFileName = "spf.dfl";
inline constexpr const char* kCacheDirEnv = "DFL_CACHE_DIR";

void write_sieve_cache(const std::filesystem::path& file, const PrimeTable& table);

// Returns nullopt (with the reason in *why) when the file is missing,
// truncated, or fails the header or checksum test.
std::optional<PrimeTable> read_sieve_cache(const std::filesystem::path& file, std::string* why = nullptr);

std::uint64_t fnv1a64(const unsigned char* data, std::size_t size);

struct SieveLoad {
  PrimeTable table;
  bool loaded = false;     // came from the cache
  bool persisted = false;  // cache file now holds a table covering the limit
};

// Loads <cache_dir>/spf.dfl when it covers `limit`, otherwise sieves and
// rewrites it. An empty cache_dir disables caching. Problems are reported on
// `log` and never fail the load.
SieveLoad load_or_build_sieve(std::uint64_t limit, const std::filesystem::path& cache_dir,
                              std::ostream& log);

// --cache-dir flag, then $DFL_CACHE_DIR, then $XDG_CACHE_HOME/dfl or
// $HOME/.cache/dfl. Empty when nothing applies.
std::filesystem::path resolve_cache_dir(const std::string& flag_value);

}  // namespace dfl::cli

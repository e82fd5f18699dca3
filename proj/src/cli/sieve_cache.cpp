#include "dfl/cli/sieve_cache.hpp"

#include <array>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>
#include <system_error>
#include <vector>

#include "dfl/errors.hpp"

namespace dfl::cli {

namespace {

void put_le(unsigned char* dst, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) dst[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t get_le(const unsigned char* src, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{src[i]} << (8 * i);
  return v;
}

std::vector<unsigned char> payload_bytes(const PrimeTable& table) {
  const auto spf = table.spf_data();
  std::vector<unsigned char> bytes(spf.size() * 4);
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(bytes.data(), spf.data(), bytes.size());
  } else {
    for (std::size_t i = 0; i < spf.size(); ++i) put_le(bytes.data() + 4 * i, spf[i], 4);
  }
  return bytes;
}

}  // namespace

std::uint64_t fnv1a64(const unsigned char* data, std::size_t size) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_sieve_cache(const std::filesystem::path& file, const PrimeTable& table) {
  const auto payload = payload_bytes(table);
  std::array<unsigned char, kCacheHeaderSize> header{};
  std::memcpy(header.data(), kCacheMagic, 4);
  put_le(header.data() + 4, kCacheVersion, 4);
  put_le(header.data() + 8, table.limit(), 8);
  put_le(header.data() + 16, fnv1a64(payload.data(), payload.size()), 8);

  // Write beside the target and rename so readers never see a partial file.
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(header.data()), header.size());
    out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move cache into place at " + file.string());
  }
}

std::optional<PrimeTable> read_sieve_cache(const std::filesystem::path& file, std::string* why) {
  auto fail = [&](std::string reason) -> std::optional<PrimeTable> {
    if (why) *why = std::move(reason);
    return std::nullopt;
  };
  std::ifstream in(file, std::ios::binary);
  if (!in) return fail("no cache file");

  std::array<unsigned char, kCacheHeaderSize> header{};
  if (!in.read(reinterpret_cast<char*>(header.data()), header.size())) return fail("truncated header");
  if (std::memcmp(header.data(), kCacheMagic, 4) != 0) return fail("bad magic");
  if (get_le(header.data() + 4, 4) != kCacheVersion) return fail("unsupported version");
  const std::uint64_t limit = get_le(header.data() + 8, 8);
  const std::uint64_t checksum = get_le(header.data() + 16, 8);
  if (limit < 2 || limit >= 0xffffffffULL) return fail("implausible limit");

  std::vector<unsigned char> payload((limit + 1) * 4);
  if (!in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size())))
    return fail("truncated payload");
  if (in.peek() != std::ifstream::traits_type::eof()) return fail("trailing bytes");
  if (fnv1a64(payload.data(), payload.size()) != checksum) return fail("checksum mismatch");

  std::vector<std::uint32_t> spf(limit + 1);
  for (std::size_t i = 0; i < spf.size(); ++i)
    spf[i] = static_cast<std::uint32_t>(get_le(payload.data() + 4 * i, 4));
  try {
    return PrimeTable::from_spf(std::move(spf));
  } catch (const Error& e) {
    return fail(e.what());
  }
}

SieveLoad load_or_build_sieve(std::uint64_t limit, const std::filesystem::path& cache_dir,
                              std::ostream& log) {
  if (cache_dir.empty()) return {PrimeTable(limit), false, false};

  const auto file = cache_dir / kCacheFileName;
  std::error_code ec;
  if (std::filesystem::exists(file, ec)) {
    std::string why;
    if (auto cached = read_sieve_cache(file, &why)) {
      if (cached->limit() >= limit) {
        return {cached->limit() == limit ? std::move(*cached) : cached->truncated(limit), true, true};
      }
    } else {
      log << "warning: ignoring sieve cache " << file.string() << ": " << why << "; rebuilding\n";
    }
  }

  SieveLoad out{PrimeTable(limit), false, false};
  try {
    std::filesystem::create_directories(cache_dir);
    write_sieve_cache(file, out.table);
    out.persisted = true;
  } catch (const std::exception& e) {
    log << "warning: sieve cache not written: " << e.what() << '\n';
  }
  return out;
}

std::filesystem::path resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "dfl";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "dfl";
  return {};
}

}  // namespace dfl::cli

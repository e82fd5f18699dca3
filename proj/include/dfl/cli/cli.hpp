#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dfl/cli/output.hpp"

namespace dfl::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitUsage = 2,
  kExitResourceLimit = 3,
};

struct CommandConfig {
  std::uint64_t sieve_limit = 1'000'000;
  std::filesystem::path cache_dir;  // empty = no cache
  OutputFormat output_format = OutputFormat::jsonl;
  unsigned threads = 0;  // 0 = auto
  std::uint64_t node_budget = 100'000'000;
};

// Largest sieve the CLI will build on request.
inline constexpr std::uint64_t kMaxSieveLimit = 400'000'000;

// argv[0] is the program name. Records go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace dfl::cli

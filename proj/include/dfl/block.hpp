#pragma once

#include <cstdint>
#include <vector>

#include "dfl/prime_table.hpp"

namespace dfl {

// Analysis of the block product x(x+1)...(x+k-1). Every field is computed
// term by term; the product itself is never formed.
struct BlockReport {
  std::uint64_t x = 0;
  std::uint64_t k = 0;
  std::uint64_t lpf = 1;   // largest prime factor of the product
  std::uint64_t val2 = 0;  // 2-adic valuation of the product
  bool all_composite = true;
  std::vector<std::uint64_t> term_radicals;  // N(x+i), 0 <= i < k
};

// Requires x >= 2, k >= 1 and x+k-1 <= table.limit().
BlockReport analyze_block(std::uint64_t x, std::uint64_t k, const PrimeTable& table);

}  // namespace dfl

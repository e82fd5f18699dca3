#include "dfl/block.hpp"

#include <algorithm>

#include "dfl/errors.hpp"

namespace dfl {

BlockReport analyze_block(std::uint64_t x, std::uint64_t k, const PrimeTable& table) {
  if (x < 2) throw InvalidArgument("block start must be >= 2");
  if (k < 1) throw InvalidArgument("block length must be >= 1");
  table.require(x + k - 1, "block end");

  BlockReport r{.x = x, .k = k};
  r.term_radicals.reserve(k);
  const auto spf = table.spf_data();
  for (std::uint64_t n = x; n < x + k; ++n) {
    if (spf[n] == n) r.all_composite = false;
    std::uint64_t m = n;
    std::uint64_t rad = 1;
    while (m > 1) {
      const std::uint64_t p = spf[m];
      rad *= p;
      do {
        m /= p;
        if (p == 2) ++r.val2;
      } while (m % p == 0);
      r.lpf = std::max(r.lpf, p);
    }
    r.term_radicals.push_back(rad);
  }
  return r;
}

}  // namespace dfl

#include "dfl/prime_table.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dfl/errors.hpp"

namespace dfl {

PrimeTable::PrimeTable(std::uint64_t limit) {
  if (limit < 2) throw InvalidArgument("sieve limit must be >= 2");
  if (limit >= std::numeric_limits<std::uint32_t>::max())
    throw OutOfRange("sieve limit must fit in 32 bits");

  const auto n = static_cast<std::uint32_t>(limit);
  spf_.assign(std::size_t{n} + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t q = std::uint64_t{p} * i;
      if (p > spf_[i] || q > n) break;
      spf_[q] = p;
    }
  }
}

PrimeTable PrimeTable::from_spf(std::vector<std::uint32_t> spf) {
  if (spf.size() < 3) throw InvalidArgument("factor table too small");
  if (spf[0] != 0 || spf[1] != 0) throw InvalidArgument("factor table has nonzero entry below 2");
  for (std::size_t i = 2; i < spf.size(); ++i) {
    const std::uint64_t p = spf[i];
    if (p < 2 || p > i || i % p != 0 || spf[p] != p || (p != i && p * p > i))
      throw InvalidArgument("factor table entry " + std::to_string(i) + " is inconsistent");
  }
  PrimeTable t;
  t.spf_ = std::move(spf);
  t.collect_primes();
  return t;
}

void PrimeTable::collect_primes() {
  primes_.clear();
  for (std::size_t i = 2; i < spf_.size(); ++i)
    if (spf_[i] == i) primes_.push_back(static_cast<std::uint32_t>(i));
}

std::uint32_t PrimeTable::smallest_prime_factor(std::uint64_t n) const {
  if (n < 2) throw InvalidArgument("smallest prime factor needs n >= 2");
  require(n, "n");
  return spf_[n];
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  require(n, "n");
  return n >= 2 && spf_[n] == n;
}

std::size_t PrimeTable::prime_pi(std::uint64_t n) const {
  require(n, "n");
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

void PrimeTable::require(std::uint64_t n, const char* what) const {
  if (n > limit())
    throw OutOfRange(std::string(what) + " = " + std::to_string(n) +
                     " exceeds sieve limit " + std::to_string(limit()));
}

PrimeTable PrimeTable::truncated(std::uint64_t new_limit) const {
  if (new_limit < 2) throw InvalidArgument("sieve limit must be >= 2");
  require(new_limit, "truncated limit");
  PrimeTable t;
  t.spf_.assign(spf_.begin(), spf_.begin() + static_cast<std::ptrdiff_t>(new_limit + 1));
  t.primes_.assign(primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(prime_pi(new_limit)));
  return t;
}

}  // namespace dfl

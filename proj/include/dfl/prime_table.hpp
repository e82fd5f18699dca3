#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dfl {

// Smallest-prime-factor sieve over [0, limit]. Immutable once built, so a
// single table can be shared by any number of reader threads.
//
// Memory is 4 bytes per integer for the factor array plus the prime list.
class PrimeTable {
 public:
  // Linear sieve. Throws InvalidArgument for limit < 2.
  explicit PrimeTable(std::uint64_t limit);

  // Adopts a previously serialized factor array (entries 0 and 1 are 0).
  // The array is validated structurally; throws InvalidArgument if it is
  // not a plausible smallest-prime-factor table.
  static PrimeTable from_spf(std::vector<std::uint32_t> spf);

  std::uint64_t limit() const { return spf_.size() - 1; }

  // n must lie in [2, limit].
  std::uint32_t smallest_prime_factor(std::uint64_t n) const;

  bool is_prime(std::uint64_t n) const;

  // All primes <= limit, ascending.
  std::span<const std::uint32_t> primes() const { return primes_; }

  // Number of primes <= n (n <= limit).
  std::size_t prime_pi(std::uint64_t n) const;

  // Raw factor array, index 0..limit.
  std::span<const std::uint32_t> spf_data() const { return spf_; }

  // Throws OutOfRange naming `what` when n > limit.
  void require(std::uint64_t n, const char* what) const;

  // Returns a table over [0, new_limit] (new_limit <= limit) without resieving.
  PrimeTable truncated(std::uint64_t new_limit) const;

 private:
  PrimeTable() = default;
  void collect_primes();

  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

inline PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

}  // namespace dfl

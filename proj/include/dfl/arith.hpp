#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dfl/prime_table.hpp"

namespace dfl {

using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly increasing, exponents >= 1.
class Factorization {
 public:
  Factorization() = default;

  const std::vector<PrimePower>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Product of p^e, exact.
  BigInt value() const;
  // Largest prime, or 1 for the empty factorization.
  std::uint64_t largest_prime() const;
  // Product of the distinct primes.
  std::uint64_t radical() const;
  std::uint32_t exponent_of(std::uint64_t p) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  friend Factorization factorize(std::uint64_t n, const PrimeTable& table);
  std::vector<PrimePower> entries_;
};

// n in [1, table.limit()]. factorize(1) is empty.
Factorization factorize(std::uint64_t n, const PrimeTable& table);

// P(n) with P(1) = 1.
std::uint64_t largest_prime_factor(std::uint64_t n, const PrimeTable& table);

// N(n), the product of distinct primes dividing n; radical(1) = 1.
std::uint64_t radical(std::uint64_t n, const PrimeTable& table);

// Deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Largest e with p^e | n. Throws InvalidArgument if n == 0 or p is not prime.
std::uint32_t valuation(std::uint64_t n, std::uint64_t p);

// Legendre: v_p(m!) = sum_{i>=1} floor(m / p^i).
std::uint64_t factorial_valuation(std::uint64_t m, std::uint64_t p);

BigInt factorial(std::uint64_t m);

// m!! with 0!! = 1!! = 1.
BigInt double_factorial(std::uint64_t m);

std::string to_string(const BigInt& v);

}  // namespace dfl

#include "dfl/arith.hpp"

#include <algorithm>

#include "dfl/errors.hpp"

namespace dfl {

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto& [p, e] : entries_) v *= boost::multiprecision::pow(BigInt(p), e);
  return v;
}

std::uint64_t Factorization::largest_prime() const {
  return entries_.empty() ? 1 : entries_.back().prime;
}

std::uint64_t Factorization::radical() const {
  std::uint64_t r = 1;
  for (const auto& pe : entries_) r *= pe.prime;
  return r;
}

std::uint32_t Factorization::exponent_of(std::uint64_t p) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const PrimePower& pe, std::uint64_t q) { return pe.prime < q; });
  return it != entries_.end() && it->prime == p ? it->exponent : 0;
}

Factorization factorize(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw InvalidArgument("cannot factorize 0");
  table.require(n, "n");
  Factorization f;
  const auto spf = table.spf_data();
  while (n > 1) {
    const std::uint64_t p = spf[n];
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.entries_.push_back({p, e});
  }
  return f;
}

std::uint64_t largest_prime_factor(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw InvalidArgument("P(0) is undefined");
  table.require(n, "n");
  const auto spf = table.spf_data();
  std::uint64_t p = 1;
  while (n > 1) {
    p = spf[n];
    n /= p;
  }
  // spf is nondecreasing along the division chain, so the last one is largest.
  return p;
}

std::uint64_t radical(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw InvalidArgument("radical(0) is undefined");
  return factorize(n, table).radical();
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are sufficient below 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint32_t valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw InvalidArgument("valuation of 0 is unbounded");
  if (!is_prime_u64(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  std::uint32_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::uint64_t factorial_valuation(std::uint64_t m, std::uint64_t p) {
  if (!is_prime_u64(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  std::uint64_t total = 0;
  while (m >= p) {
    m /= p;
    total += m;
  }
  return total;
}

BigInt factorial(std::uint64_t m) {
  BigInt v = 1;
  for (std::uint64_t i = 2; i <= m; ++i) v *= i;
  return v;
}

BigInt double_factorial(std::uint64_t m) {
  BigInt v = 1;
  for (std::uint64_t i = m; i >= 2; i -= 2) v *= i;
  return v;
}

std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace dfl

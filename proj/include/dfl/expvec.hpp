#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dfl/arith.hpp"
#include "dfl/prime_table.hpp"

namespace dfl {

// A positive integer held as its prime-exponent vector. Lets us compare and
// divide products like n!! without ever materializing them.
//
// Canonical: primes ascending, no zero exponents. Equality of two ExpVecs is
// therefore equality of the integers they represent.
class ExpVec {
 public:
  struct Entry {
    std::uint64_t prime = 0;
    std::uint64_t exponent = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  ExpVec() = default;  // the integer 1

  static ExpVec from(const Factorization& f);
  // Entries need not be sorted or merged; zero exponents are dropped.
  static ExpVec from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }
  std::uint64_t exponent_of(std::uint64_t p) const;

  ExpVec& operator*=(const ExpVec& rhs);
  // Only legal when rhs divides *this; otherwise throws InvalidArgument.
  ExpVec& operator/=(const ExpVec& rhs);

  friend ExpVec operator*(ExpVec lhs, const ExpVec& rhs) { return lhs *= rhs; }
  friend ExpVec operator/(ExpVec lhs, const ExpVec& rhs) { return lhs /= rhs; }

  // True when *this divides other.
  bool divides(const ExpVec& other) const;

  BigInt value() const;

  friend bool operator==(const ExpVec&, const ExpVec&) = default;

 private:
  std::vector<Entry> entries_;
};

// Exact m!! in exponent form via Legendre's formula:
// (2l)!! = 2^l l!  and  (2l-1)!! = (2l)! / (2^l l!).
ExpVec double_factorial_expvec(std::uint64_t m, const PrimeTable& table);

ExpVec factorial_expvec(std::uint64_t m, const PrimeTable& table);

// v_p(m!!) for a prime p, without building the vector.
std::uint64_t double_factorial_valuation(std::uint64_t m, std::uint64_t p);

}  // namespace dfl

#pragma once

#include <cstdint>
#include <vector>

#include "dfl/prime_table.hpp"

namespace dfl {

// Pairwise coprime a + b = c with a <= b.
struct AbcTriple {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t rad = 0;  // N(abc)
  double quality = 0;     // ln c / ln rad
  bool explicit_ok = false;  // c < rad^{7/4}, decided as c^4 < rad^7
  double explicit_margin = 0;  // (7/4) ln rad - ln c

  friend bool operator==(const AbcTriple&, const AbcTriple&) = default;
};

// Divides a, b and a+b by g = gcd(a, b). Since gcd(a, a+b) = gcd(b, a+b) =
// gcd(a, b), this one division leaves the triple pairwise coprime.
AbcTriple make_triple(std::uint64_t a, std::uint64_t b, const PrimeTable& table);

// The difference triple (x+j1) - (x+j2) = j1 - j2 from a block, divided by
// d = gcd(x+j1, |j1-j2|), with the explicit-abc consequence
//   x/d <= (N(x+j1) N(x+j2) |j1-j2| / d)^{7/4}.
struct ProofTriple {
  std::uint64_t x = 0;
  std::uint64_t j1 = 0;
  std::uint64_t j2 = 0;
  AbcTriple triple;
  std::uint64_t d = 1;
  double x_over_d = 0;
  double rhs = 0;
  bool holds = false;
};

ProofTriple proof_triple(std::uint64_t x, std::uint64_t j1, std::uint64_t j2,
                         const PrimeTable& table);

struct Inequality3 {
  double lhs = 0;  // k ln m
  double rhs = 0;  // (7/4)(k 2.00016 a2/(k-1) + 2k^2 ln k/(k-1) + k ln k)
  bool holds = false;
};

// Also serves the odd-case analogue with a2 := a1+1, m := x1, k := l1.
Inequality3 inequality3_rhs(std::uint64_t k, std::uint64_t a2, std::uint64_t m);

// Highest-quality proof triple over all pairs j2 < j1 < k. Ties keep the
// first pair in (j1, j2) order.
ProofTriple scan_block_triples(std::uint64_t x, std::uint64_t k, const PrimeTable& table);

struct ProofTripleScan {
  std::uint64_t x_lo = 0;
  std::uint64_t x_hi = 0;
  std::uint64_t k = 0;
  std::uint64_t triples = 0;
  std::vector<ProofTriple> explicit_violations;  // c^4 >= rad^7
  ProofTriple best;                              // highest quality seen
};

// Every proof triple of every block D(x, k), x_lo <= x <= x_hi. Blocks of
// length k contain all pairs of shorter blocks with the same start.
ProofTripleScan scan_proof_triples(std::uint64_t x_lo, std::uint64_t x_hi, std::uint64_t k,
                                   const PrimeTable& table, unsigned threads = 1);

}  // namespace dfl

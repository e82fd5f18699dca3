#include <doctest.h>

#include <cmath>
#include <numeric>

#include "../support/oracles.hpp"
#include "dfl/abc.hpp"
#include "dfl/errors.hpp"

using namespace dfl;

namespace {

const PrimeTable& table() {
  static const PrimeTable t(100'000);
  return t;
}

void check_triple(const AbcTriple& t) {
  REQUIRE(t.a + t.b == t.c);
  REQUIRE(t.a <= t.b);
  REQUIRE(std::gcd(t.a, t.b) == 1);
  REQUIRE(std::gcd(t.a, t.c) == 1);
  REQUIRE(std::gcd(t.b, t.c) == 1);
  REQUIRE(t.rad == oracle::trial_radical(t.a) * oracle::trial_radical(t.b) * oracle::trial_radical(t.c));
  if (t.rad > 1) {
    REQUIRE(t.quality == doctest::Approx(std::log(double(t.c)) / std::log(double(t.rad))));
    REQUIRE((t.quality > 1) == (t.c > t.rad));
  }
  const BigInt c = t.c, rad = t.rad;
  REQUIRE(t.explicit_ok == (boost::multiprecision::pow(c, 4) < boost::multiprecision::pow(rad, 7)));
  REQUIRE(t.explicit_margin == doctest::Approx(1.75 * std::log(double(t.rad)) - std::log(double(t.c))));
}

}  // namespace

TEST_CASE("triple examples") {
  const AbcTriple a = make_triple(1, 8, table());
  CHECK(a.c == 9);
  CHECK(a.rad == 6);
  CHECK(a.quality == doctest::Approx(1.226294).epsilon(1e-6));
  CHECK(a.explicit_ok);
  const AbcTriple b = make_triple(1, 4374, table());
  CHECK(b.c == 4375);
  CHECK(b.rad == 210);
  CHECK(std::abs(b.quality - 1.5679) < 1e-3);
  CHECK(b.explicit_ok);
  CHECK(std::pow(210.0, 1.75) == doctest::Approx(11584.67).epsilon(1e-6));
  const AbcTriple c = make_triple(3, 6, table());
  CHECK(c.a == 1);
  CHECK(c.b == 2);
  CHECK(c.c == 3);
  CHECK(c.rad == 6);
  CHECK(make_triple(8, 1, table()) == a);
  CHECK(b.quality > a.quality);
  CHECK_THROWS_AS(make_triple(0, 5, table()), InvalidArgument);
  CHECK_THROWS_AS(make_triple(1, 100'000, table()), OutOfRange);
  check_triple(a);
  check_triple(b);
  check_triple(c);
}

TEST_CASE("normalization does not depend on which gcd is used") {
  for (std::uint64_t a = 1; a <= 300; ++a)
    for (std::uint64_t b = a; b <= 300; b += 7) {
      const std::uint64_t c = a + b;
      REQUIRE(std::gcd(a, b) == std::gcd(b, c));
      REQUIRE(std::gcd(a, b) == std::gcd(a, c));
      const AbcTriple t = make_triple(a, b, table());
      const std::uint64_t g = std::gcd(a, c);
      REQUIRE(t.a == a / g);
      REQUIRE(t.c == c / g);
      check_triple(t);
    }
}

TEST_CASE("proof triple examples") {
  const ProofTriple p = proof_triple(9, 1, 0, table());
  CHECK(p.triple.a == 1);
  CHECK(p.triple.b == 9);
  CHECK(p.triple.c == 10);
  CHECK(p.triple.rad == 30);
  CHECK(p.d == 1);
  CHECK(p.x_over_d == 9);
  CHECK(p.rhs == doctest::Approx(std::pow(30.0, 1.75)));
  CHECK(p.rhs == doctest::Approx(384.56).epsilon(1e-4));
  CHECK(p.holds);
  const ProofTriple q = proof_triple(24, 3, 1, table());
  CHECK(q.d == 1);
  CHECK(q.triple.a == 2);
  CHECK(q.triple.b == 25);
  CHECK(q.triple.c == 27);
  CHECK(q.triple.rad == 30);
  const ProofTriple r = proof_triple(4374, 1, 0, table());
  CHECK(r.triple == make_triple(1, 4374, table()));
  CHECK(proof_triple(24, 1, 3, table()).triple == q.triple);
  CHECK_THROWS_AS(proof_triple(9, 1, 1, table()), InvalidArgument);
}

TEST_CASE("proof triple divisor is symmetric in the two terms") {
  // gcd(x+j1, j1-j2) = gcd(x+j2, j1-j2), so the divisor matches the normalizing gcd.
  for (std::uint64_t x = 2; x <= 2000; ++x)
    for (std::uint64_t j1 = 1; j1 < 8; ++j1)
      for (std::uint64_t j2 = 0; j2 < j1; ++j2) {
        const std::uint64_t diff = j1 - j2;
        REQUIRE(std::gcd(x + j1, diff) == std::gcd(x + j2, diff));
        const ProofTriple p = proof_triple(x, j1, j2, table());
        REQUIRE(p.d == std::gcd(x + j1, diff));
        REQUIRE(p.triple.a + p.triple.b == p.triple.c);
        REQUIRE(p.triple.c == (x + j1) / p.d);
        REQUIRE(p.x_over_d == doctest::Approx(double(x) / double(p.d)));
        const double rhs = std::pow(double(oracle::trial_radical(x + j1) * oracle::trial_radical(x + j2) * diff) /
                                        double(p.d),
                                    1.75);
        REQUIRE(p.rhs == doctest::Approx(rhs));
        if (p.triple.explicit_ok) REQUIRE(p.holds);
      }
}

TEST_CASE("explicit-abc inequality evaluator") {
  const Inequality3 a = inequality3_rhs(2, 5, 9);
  CHECK(a.rhs == doctest::Approx(47.1329).epsilon(1e-5));
  CHECK(a.lhs == doctest::Approx(2 * std::log(9.0)));
  CHECK(a.holds);
  const Inequality3 b = inequality3_rhs(2, 3, 1'000'000);
  CHECK(b.rhs == doctest::Approx(33.1318).epsilon(1e-5));
  CHECK(b.lhs == doctest::Approx(27.631).epsilon(1e-4));
  CHECK(b.holds);
  const Inequality3 c = inequality3_rhs(10, 3, 1'000'000'000);
  CHECK_FALSE(c.holds);
  CHECK(c.rhs == doctest::Approx(141.51).epsilon(1e-4));
  CHECK(c.lhs == doctest::Approx(207.23).epsilon(1e-4));
  CHECK_THROWS_AS(inequality3_rhs(1, 3, 9), InvalidArgument);
}

TEST_CASE("best triple of a block") {
  CHECK(scan_block_triples(9, 2, table()).triple == make_triple(1, 9, table()));
  const ProofTriple big = scan_block_triples(4374, 2, table());
  CHECK(big.triple == make_triple(1, 4374, table()));
  const ProofTriple best = scan_block_triples(24, 5, table());
  double q = -1;
  for (std::uint64_t j1 = 1; j1 < 5; ++j1)
    for (std::uint64_t j2 = 0; j2 < j1; ++j2) {
      const ProofTriple p = proof_triple(24, j1, j2, table());
      if (p.triple.quality > q) q = p.triple.quality;
    }
  CHECK(best.triple.quality == q);
  CHECK_THROWS_AS(scan_block_triples(9, 1, table()), InvalidArgument);
}

TEST_CASE("proof triple scan over blocks up to ten thousand") {
  const ProofTripleScan s = scan_proof_triples(2, 10'000, 8, table(), 2);
  CHECK(s.triples == 9999 * 28);
  CHECK(s.explicit_violations.empty());
  CHECK(s.best.triple == make_triple(1, 4374, table()));
  const ProofTripleScan again = scan_proof_triples(2, 10'000, 8, table(), 1);
  CHECK(again.best.x == s.best.x);
  CHECK(again.best.j1 == s.best.j1);
}

TEST_CASE("scanned triples satisfy the triple invariants") {
  for (std::uint64_t x = 2; x <= 3000; x += 3)
    for (std::uint64_t j1 = 1; j1 < 8; ++j1)
      for (std::uint64_t j2 = 0; j2 < j1; ++j2) check_triple(proof_triple(x, j1, j2, table()).triple);
}

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfl/equation.hpp"
#include "dfl/prime_table.hpp"

namespace dfl {

// Explicit constants of the inequalities checked below.
//
// kThetaFactor is Dusart's constant in theta(nu) < 1.00008 nu (natural log).
// kBlockLpfNumerator / kBlockLpfDenominator encode P(D(x,k)) > 4.42 k for
// x > 4k outside the exceptional set, kept rational so the test is exact.
// kErdosFactor is the 2/7 in P(D(x,k)) > (2/7) k log k for composite blocks.
// kVal2Percent and kVal2Offset give v_2(m!) > 0.99 m - 7.
// kOddBoundConstant is the 4.01 in 0.99 a1 <= 4 l1 + 4.01 + 2 log2 5 + 2 log2 l1.
// kExplicitAbcNum / kExplicitAbcDen is the exponent 7/4 of c < N(abc)^{7/4}.
inline constexpr double kThetaFactor = 1.00008;
inline constexpr std::uint64_t kBlockLpfNumerator = 442;
inline constexpr std::uint64_t kBlockLpfDenominator = 100;
inline constexpr double kBlockLpfFactor = 4.42;
inline constexpr double kErdosFactor = 2.0 / 7.0;
inline constexpr std::int64_t kVal2Percent = 99;
inline constexpr std::int64_t kVal2Offset = 7;
inline constexpr double kOddBoundConstant = 4.01;
inline constexpr unsigned kExplicitAbcNum = 7;
inline constexpr unsigned kExplicitAbcDen = 4;
inline constexpr std::uint64_t kDusartThreshold = 3275;

// Tolerance for inequalities evaluated in floating point. A strict
// inequality holds only with slack > tolerance; a non-strict one with
// slack >= -tolerance.
inline constexpr double kCheckTolerance = 1e-9;

struct Counterexample {
  std::string at;
  double slack = 0;
};

struct BoundCheckResult {
  std::string name;
  std::string domain_checked;
  std::vector<Counterexample> counterexamples;  // first kMaxStored failures
  std::uint64_t failures = 0;
  std::uint64_t checked = 0;
  double margin = std::numeric_limits<double>::infinity();  // minimum slack
  double tolerance = kCheckTolerance;
  std::vector<std::string> notes;  // e.g. hypotheses that were not met

  static constexpr std::size_t kMaxStored = 1000;

  bool passed() const { return failures == 0; }
  void record(std::string_view at, double slack, bool holds);
  void merge(const BoundCheckResult& other);
};

// theta(p) < 1.00008 p at every prime p <= nu_max (theta only jumps at primes).
BoundCheckResult verify_theta_bound(std::uint64_t nu_max, const PrimeTable& table);

// sum_{q<=p} ln q / q < ln p at every prime p <= nu_max.
BoundCheckResult verify_mertens_bound(std::uint64_t nu_max, const PrimeTable& table);

// "D(x,k) all composite => x >= k"; false only for a block that Bertrand's
// postulate rules out.
bool check_composite_block_geometry(std::uint64_t x, std::uint64_t k, const PrimeTable& table);

// The above for every 2 <= x < k <= k_max.
BoundCheckResult composite_block_geometry_sweep(std::uint64_t k_max, const PrimeTable& table);

// Stirling-type sandwich for a verified solution.
//   r = 0: a2 ln a2 - a2 <= ln(a2!!) <= k ln(4m), m = A1+1, k = N-A1
//   r = 1: a1 ln a1 - a1 <= ln((a1+1)!) <= 2 l1 ln(4 x1)
// The upper bound is evaluated only when the relevant block is all composite;
// otherwise a note is added. Logs of factorials are exact sums, not Stirling.
BoundCheckResult sandwich_check(const EquationInstance& inst, const PrimeTable& table);

// For an r = 0 solution: D(A1+1, N-A1) contains no prime.
BoundCheckResult block_primality_check(const EquationInstance& inst, const PrimeTable& table);

class ExceptionSet {
 public:
  using Pair = std::pair<std::uint64_t, std::uint64_t>;

  // The 38 exempted (x, k) pairs, (9,2) through (30,7).
  static const ExceptionSet& standard();

  bool contains(std::uint64_t x, std::uint64_t k) const;
  const std::vector<Pair>& pairs() const { return pairs_; }

 private:
  explicit ExceptionSet(std::vector<Pair> pairs);
  std::vector<Pair> pairs_;  // sorted
};

struct BlockLpfScan {
  std::vector<ExceptionSet::Pair> exceptions;        // all (x,k) with P <= 4.42k
  std::vector<ExceptionSet::Pair> members_satisfying;  // scanned T pairs with P > 4.42k
  BoundCheckResult result;                          // failures = exceptions outside T
};

// For k in [k_lo, k_hi] and 4k < x <= x_max checks P(D(x,k)) > 4.42 k.
BlockLpfScan theorem24_scan(std::uint64_t k_lo, std::uint64_t k_hi, std::uint64_t x_max,
                             const PrimeTable& table);

// P(D(x,k)) / (k ln k) for an all-composite block, else nullopt.
std::optional<double> erdos_ratio(std::uint64_t x, std::uint64_t k, const PrimeTable& table);

// v_2(D(x,k)) <= k - 1 + log2(x + k), decided in integers.
BoundCheckResult valuation2_block_bound_check(std::uint64_t x, std::uint64_t k,
                                              const PrimeTable& table);

struct Val2Sweep {
  std::uint64_t x_max = 10'000;
  std::uint64_t k_max = 50;
  std::uint64_t samples = 0;  // 0 = every (x, k) with 2 <= x <= x_max, 1 <= k <= k_max
  std::uint64_t seed = 1;
};

BoundCheckResult valuation2_block_sweep(const Val2Sweep& sweep, const PrimeTable& table);

// v_2(m!) > 0.99 m - 7 for 1 <= m <= m_max, decided in integers.
BoundCheckResult valuation2_factorial_lower_check(std::uint64_t m_max);

// Upper bound on a1 implied when x1 <= 4 l1:
// (4 l1 + 4.01 + 2 log2 5 + 2 log2 l1) / 0.99.
double thm12ii_bound(std::uint64_t l1);

// Deletes, for each prime p < k, the term where p has maximal valuation
// (earliest on ties) and checks
//   prod_{survivors} N(x+i) <= prod_{k<=p<=a} p * prod_{p<k} p^{floor(k/p)}
//                           <= exp(1.00008 a + k ln k).
// Throws HypothesisViolation if a prime divisor of the block exceeds a_bound.
BoundCheckResult radical_product_bound_check(std::uint64_t x, std::uint64_t k,
                                             std::uint64_t a_bound, const PrimeTable& table);

struct TwoRadicals {
  std::uint64_t j1 = 0;  // index of the smallest radical
  std::uint64_t j2 = 0;  // index of the second smallest
  std::uint64_t rad1 = 0;
  std::uint64_t rad2 = 0;
  double bound = 0;  // (prod N(x+i))^{1/(k-1)}
  bool holds = false;
};

TwoRadicals smallest_two_radicals(std::uint64_t x, std::uint64_t k, const PrimeTable& table);

struct DusartCheck {
  BoundCheckResult usage_form;    // prime in (y / (1 + 1/(2 ln^2 y)), y)
  BoundCheckResult literal_form;  // prime in (y / (1 + 2 ln^2 y), y)
};

// Both interval forms for every y in [y_lo, y_hi]. y_lo >= 3275.
DusartCheck dusart_check(std::uint64_t y_lo, std::uint64_t y_hi, const PrimeTable& table);
inline DusartCheck dusart_check(std::uint64_t y, const PrimeTable& table) {
  return dusart_check(y, y, table);
}

// P(n(n+1)) / ln n.
double erdos_graham_ratio(std::uint64_t n, const PrimeTable& table);

}  // namespace dfl

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dfl/prime_table.hpp"

namespace dfl {

// A candidate for n!! = a_1!! ... a_t!!. The a_i form a multiset; they are
// stored in nonincreasing order, which is only a normalization.
class EquationInstance {
 public:
  // Requires t >= 2, every a_i >= 3 and max(a) < n. Parity consistency is not
  // enforced so that impossible instances can still be checked.
  EquationInstance(std::uint64_t n, std::vector<std::uint64_t> a);

  std::uint64_t n() const { return n_; }
  const std::vector<std::uint64_t>& a() const { return a_; }
  std::size_t t() const { return a_.size(); }
  // Number of odd a_i.
  std::size_t r() const;
  // n is even whenever some a_i is even.
  bool parity_consistent() const;
  bool contains(std::uint64_t v, std::size_t times = 1) const;

  friend bool operator==(const EquationInstance&, const EquationInstance&) = default;

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> a_;
};

enum class Classification { trivial_even, trivial_odd, nontrivial };

std::string_view to_string(Classification c);

// Block decomposition of an r = 1 solution,
//   2^{l1} D(x1, l1) 2^{l2} D(x2, l2) = (a1+1)! * ...,
// with x1 = A_t + 1, l1 = N - A_t, x2 = A_2 + 1, l2 = A_1 - A_2. The role of
// a_t is taken by the largest even element and a_2 by the next largest even
// element; `ordered` records whether the odd element exceeds that a_2.
struct Decomposition {
  std::int64_t x1 = 0;
  std::int64_t l1 = 0;
  std::int64_t x2 = 0;
  std::int64_t l2 = 0;
  bool ordered = false;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct SolutionRecord {
  EquationInstance instance;
  Classification classification;
  std::string witness;
  std::optional<Decomposition> decomposition;  // r == 1 only
};

// Exact check of prod a_i!! == n!! in prime-exponent form.
bool check_identity(const EquationInstance& inst, const PrimeTable& table);

// Throws NotASolution unless check_identity holds.
SolutionRecord classify(const EquationInstance& inst, const PrimeTable& table);

// Decomposition for an instance with exactly one odd element and at least two
// even ones; nullopt otherwise.
std::optional<Decomposition> decompose_odd(const EquationInstance& inst);

inline constexpr std::uint64_t kDefaultGeneratorBound = std::uint64_t{1} << 62;

// n = prod e!!, a = evens + {n - 2}.
EquationInstance generate_trivial_even(std::span<const std::uint64_t> evens,
                                       std::uint64_t max_n = kDefaultGeneratorBound);

// n = a1! * prod e!!, a = {a1, a1 - 1} + evens + {n - 2}.
EquationInstance generate_trivial_odd(std::uint64_t a1, std::span<const std::uint64_t> evens,
                                      std::uint64_t max_n = kDefaultGeneratorBound);

enum class ParityMode { r0, r1 };

std::string_view to_string(ParityMode m);

struct SearchOptions {
  std::uint64_t n_max = 0;
  std::size_t t_max = 2;
  ParityMode mode = ParityMode::r0;
  unsigned threads = 1;  // 0 = hardware concurrency
  std::uint64_t node_budget = 100'000'000;
};

// Every solution with n <= n_max and 2 <= t <= t_max (3 <= t for r1) in the
// requested parity regime, classified, sorted by n then by a.
//
// Depth-first over nonincreasing a_i. A branch survives only if the partial
// product divides n!! exactly and a log-size bound leaves room to reach n!!.
// Throws ResourceLimit once more than node_budget candidates are examined.
std::vector<SolutionRecord> search(const SearchOptions& opts, const PrimeTable& table);

struct KnownIdentity {
  std::string label;
  std::vector<std::uint64_t> lhs;  // factorial arguments
  std::uint64_t rhs = 0;
  bool holds = false;
};

// The five nontrivial single-factorial solutions, evaluated exactly.
std::vector<KnownIdentity> verify_known_factorial_solutions();

// For even n and odd a1 = n - l >= 3: the largest prime p with n/2 < p <= a1.
// Such a p divides a1!! but not n!! = 2^{n/2} (n/2)!.
std::optional<std::uint64_t> odd_gap_obstruction(std::uint64_t n, std::uint64_t l,
                                                 const PrimeTable& table);

}  // namespace dfl

#include "dfl/equation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>

#include "dfl/arith.hpp"
#include "dfl/errors.hpp"
#include "dfl/expvec.hpp"
#include "dfl/parallel.hpp"

namespace dfl {

EquationInstance::EquationInstance(std::uint64_t n, std::vector<std::uint64_t> a)
    : n_(n), a_(std::move(a)) {
  if (a_.size() < 2) throw InvalidArgument("an instance needs t >= 2 factors");
  std::sort(a_.begin(), a_.end(), std::greater<>());
  if (a_.back() < 3) throw InvalidArgument("every a_i must be >= 3");
  if (a_.front() >= n_) throw InvalidArgument("every a_i must be < n");
}

std::size_t EquationInstance::r() const {
  return static_cast<std::size_t>(
      std::count_if(a_.begin(), a_.end(), [](std::uint64_t v) { return v % 2 == 1; }));
}

bool EquationInstance::parity_consistent() const { return n_ % 2 == 0 || r() == t(); }

bool EquationInstance::contains(std::uint64_t v, std::size_t times) const {
  return static_cast<std::size_t>(std::count(a_.begin(), a_.end(), v)) >= times;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::trivial_even: return "trivial-even";
    case Classification::trivial_odd: return "trivial-odd";
    case Classification::nontrivial: return "nontrivial";
  }
  return "?";
}

std::string_view to_string(ParityMode m) { return m == ParityMode::r0 ? "r0" : "r1"; }

bool check_identity(const EquationInstance& inst, const PrimeTable& table) {
  table.require(inst.n(), "n");
  // A product of double factorials containing an even one is even.
  if (!inst.parity_consistent()) return false;
  ExpVec lhs;
  for (std::uint64_t v : inst.a()) lhs *= double_factorial_expvec(v, table);
  return lhs == double_factorial_expvec(inst.n(), table);
}

std::optional<Decomposition> decompose_odd(const EquationInstance& inst) {
  if (inst.r() != 1 || inst.n() % 2 != 0) return std::nullopt;
  std::uint64_t odd = 0;
  std::vector<std::uint64_t> evens;
  for (std::uint64_t v : inst.a()) {
    if (v % 2 == 1)
      odd = v;
    else
      evens.push_back(v);  // already nonincreasing
  }
  if (evens.size() < 2) return std::nullopt;

  const auto big_n = static_cast<std::int64_t>(inst.n() / 2);
  const auto a1 = static_cast<std::int64_t>((odd + 1) / 2);
  const auto at = static_cast<std::int64_t>(evens[0] / 2);
  const auto a2 = static_cast<std::int64_t>(evens[1] / 2);
  return Decomposition{.x1 = at + 1,
                       .l1 = big_n - at,
                       .x2 = a2 + 1,
                       .l2 = a1 - a2,
                       .ordered = odd > evens[1]};
}

namespace {

SolutionRecord classify_verified(const EquationInstance& inst) {
  std::ostringstream w;
  const std::uint64_t n = inst.n();
  const std::size_t r = inst.r();
  Classification c = Classification::nontrivial;
  w << "r=" << r;
  if (r == 0) {
    const std::uint64_t gap = n - inst.a().front();
    w << "; n-max(a)=" << gap << (gap == 2 ? " (trivial even)" : " != 2");
    if (gap == 2) c = Classification::trivial_even;
  } else if (r == 1) {
    const std::uint64_t odd = *std::find_if(inst.a().begin(), inst.a().end(),
                                            [](std::uint64_t v) { return v % 2 == 1; });
    // n-2 and odd-1 must be two separate members when they coincide.
    const bool has_n2 = inst.contains(n - 2);
    const bool has_odd1 = inst.contains(odd - 1, n - 2 == odd - 1 ? 2 : 1);
    w << "; n-2=" << n - 2 << (has_n2 ? " in a" : " not in a") << "; a1-1=" << odd - 1
      << (has_odd1 ? " in a" : " not in a");
    if (has_n2 && has_odd1) c = Classification::trivial_odd;
  } else {
    w << "; outside the r<=1 trivial families";
  }
  return SolutionRecord{inst, c, w.str(), r == 1 ? decompose_odd(inst) : std::nullopt};
}

void require_even_operands(std::span<const std::uint64_t> evens) {
  for (std::uint64_t e : evens)
    if (e < 4 || e % 2 != 0) throw InvalidArgument("trivial-family operands must be even and >= 4");
}

std::uint64_t checked_n(const BigInt& n, std::uint64_t max_n) {
  if (n > max_n) throw OutOfRange("generated n = " + n.str() + " exceeds bound " + std::to_string(max_n));
  return n.convert_to<std::uint64_t>();
}

}  // namespace

SolutionRecord classify(const EquationInstance& inst, const PrimeTable& table) {
  if (!check_identity(inst, table)) throw NotASolution("prod a_i!! != n!! for this instance");
  return classify_verified(inst);
}

EquationInstance generate_trivial_even(std::span<const std::uint64_t> evens, std::uint64_t max_n) {
  if (evens.empty()) throw InvalidArgument("trivial-even needs at least one operand");
  require_even_operands(evens);
  BigInt n = 1;
  for (std::uint64_t e : evens) n *= double_factorial(e);
  const std::uint64_t nv = checked_n(n, max_n);
  std::vector<std::uint64_t> a(evens.begin(), evens.end());
  a.push_back(nv - 2);
  return EquationInstance(nv, std::move(a));
}

EquationInstance generate_trivial_odd(std::uint64_t a1, std::span<const std::uint64_t> evens,
                                      std::uint64_t max_n) {
  if (a1 < 5 || a1 % 2 == 0) throw InvalidArgument("trivial-odd needs an odd a1 >= 5");
  require_even_operands(evens);
  BigInt n = factorial(a1);
  for (std::uint64_t e : evens) n *= double_factorial(e);
  const std::uint64_t nv = checked_n(n, max_n);
  std::vector<std::uint64_t> a{a1, a1 - 1};
  a.insert(a.end(), evens.begin(), evens.end());
  a.push_back(nv - 2);
  return EquationInstance(nv, std::move(a));
}

namespace {

// Shared read-only data for all search workers.
class SearchTables {
 public:
  SearchTables(std::uint64_t n_max, const PrimeTable& table) : primes_(table.primes()) {
    log_df_.assign(n_max + 1, 0.0);
    for (std::uint64_t m = 2; m <= n_max; ++m)
      log_df_[m] = log_df_[m - 2] + std::log(static_cast<double>(m));

    offsets_.assign(n_max + 2, 0);
    std::size_t pi = 0;
    for (std::uint64_t m = 0; m <= n_max; ++m) {
      while (pi < primes_.size() && primes_[pi] <= m) ++pi;
      offsets_[m + 1] = offsets_[m] + pi;
    }
    if (offsets_.back() > kMaxEntries)
      throw ResourceLimit("search exponent tables would need " + std::to_string(offsets_.back()) +
                          " entries; lower n_max");
    exps_.resize(offsets_.back());
    for (std::uint64_t m = 2; m <= n_max; ++m)
      for (std::size_t i = 0; i < width(m); ++i)
        exps_[offsets_[m] + i] =
            static_cast<std::uint32_t>(double_factorial_valuation(m, primes_[i]));
  }

  double log_df(std::uint64_t m) const { return log_df_[m]; }
  std::span<const double> log_df_all() const { return log_df_; }
  std::size_t width(std::uint64_t m) const { return offsets_[m + 1] - offsets_[m]; }
  std::span<const std::uint32_t> exps(std::uint64_t m) const {
    return {exps_.data() + offsets_[m], width(m)};
  }

 private:
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

  std::span<const std::uint32_t> primes_;
  std::vector<double> log_df_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> exps_;
};

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t budget) : budget_(budget) {}

  void flush(std::uint64_t& local) {
    const std::uint64_t total = used_.fetch_add(local) + local;
    local = 0;
    if (total > budget_)
      throw ResourceLimit("search exceeded node budget of " + std::to_string(budget_));
  }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> used_{0};
};

class SingleNSearch {
 public:
  SingleNSearch(std::uint64_t n, const SearchOptions& opts, const SearchTables& tabs,
                NodeCounter& counter)
      : n_(n), opts_(opts), tabs_(tabs), counter_(counter) {
    const auto target = tabs.exps(n);
    remaining_.assign(target.begin(), target.end());
    rem_log_ = tabs.log_df(n);
    tol_ = 1e-9 * (1.0 + rem_log_);
    min_t_ = opts.mode == ParityMode::r1 ? 3 : 2;
  }

  std::vector<SolutionRecord> run() {
    dfs(n_ - 1, false);
    counter_.flush(local_nodes_);
    return std::move(found_);
  }

 private:
  void dfs(std::uint64_t max_a, bool odd_used) {
    const std::size_t depth = chosen_.size();
    const std::size_t slots = opts_.t_max - depth;
    const auto logs = tabs_.log_df_all();

    // Largest a <= max_a whose log still fits.
    auto first = logs.begin() + 3;
    auto last = logs.begin() + static_cast<std::ptrdiff_t>(max_a) + 1;
    auto it = std::upper_bound(first, last, rem_log_ + tol_);
    if (it == first) return;
    for (auto a = static_cast<std::uint64_t>(it - logs.begin()) - 1; a >= 3; --a) {
      const double la = tabs_.log_df(a);
      if (la * static_cast<double>(slots) < rem_log_ - tol_) break;

      const bool odd = a % 2 == 1;
      if (odd && (opts_.mode == ParityMode::r0 || odd_used)) continue;
      if (!odd && opts_.mode == ParityMode::r1 && !odd_used && slots == 1) continue;

      if (++local_nodes_ >= kFlushEvery) counter_.flush(local_nodes_);

      const auto e = tabs_.exps(a);
      if (!fits(e)) continue;

      apply(e, -1);
      rem_log_ -= la;
      chosen_.push_back(a);
      const bool now_odd = odd_used || odd;

      if (std::abs(rem_log_) <= tol_) {
        if (depth + 1 >= min_t_ && (opts_.mode == ParityMode::r0 || now_odd) && exhausted())
          found_.push_back(classify_verified(EquationInstance(n_, chosen_)));
      } else if (depth + 1 < opts_.t_max) {
        dfs(a, now_odd);
      }

      chosen_.pop_back();
      rem_log_ += la;
      apply(e, +1);
    }
  }

  bool fits(std::span<const std::uint32_t> e) const {
    // Large primes are the most selective, so scan from the top.
    for (std::size_t i = e.size(); i-- > 0;)
      if (e[i] > remaining_[i]) return false;
    return true;
  }

  void apply(std::span<const std::uint32_t> e, std::int64_t sign) {
    for (std::size_t i = 0; i < e.size(); ++i) remaining_[i] += sign * static_cast<std::int64_t>(e[i]);
  }

  bool exhausted() const {
    return std::all_of(remaining_.begin(), remaining_.end(), [](std::int64_t v) { return v == 0; });
  }

  static constexpr std::uint64_t kFlushEvery = 1 << 14;

  std::uint64_t n_;
  const SearchOptions& opts_;
  const SearchTables& tabs_;
  NodeCounter& counter_;
  std::vector<std::int64_t> remaining_;
  std::vector<std::uint64_t> chosen_;
  std::vector<SolutionRecord> found_;
  double rem_log_ = 0;
  double tol_ = 0;
  std::size_t min_t_ = 2;
  std::uint64_t local_nodes_ = 0;
};

}  // namespace

std::vector<SolutionRecord> search(const SearchOptions& opts, const PrimeTable& table) {
  if (opts.t_max < 2) throw InvalidArgument("t_max must be >= 2");
  if (opts.mode == ParityMode::r1 && opts.t_max < 3)
    throw InvalidArgument("mode r1 needs t_max >= 3 (r <= t-2)");
  if (opts.node_budget < 1) throw InvalidArgument("node budget must be >= 1");
  table.require(opts.n_max, "n_max");
  if (opts.n_max < 4) return {};

  const SearchTables tabs(opts.n_max, table);
  NodeCounter counter(opts.node_budget);

  // Both regimes force n even.
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 4; n <= opts.n_max; n += 2) ns.push_back(n);

  std::vector<std::vector<SolutionRecord>> per_n(ns.size());
  parallel_for(ns.size(), opts.threads, [&](std::size_t i) {
    per_n[i] = SingleNSearch(ns[i], opts, tabs, counter).run();
  });

  std::vector<SolutionRecord> out;
  for (auto& v : per_n) {
    std::sort(v.begin(), v.end(), [](const SolutionRecord& x, const SolutionRecord& y) {
      return x.instance.a() < y.instance.a();
    });
    std::move(v.begin(), v.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<KnownIdentity> verify_known_factorial_solutions() {
  std::vector<KnownIdentity> ids{
      {"7!3!3!2!=9!", {7, 3, 3, 2}, 9},
      {"7!6!=10!", {7, 6}, 10},
      {"7!5!3!=10!", {7, 5, 3}, 10},
      {"14!5!2!=16!", {14, 5, 2}, 16},
      {"15!2!^4=16!", {15, 2, 2, 2, 2}, 16},
  };
  for (auto& id : ids) {
    BigInt lhs = 1;
    for (std::uint64_t v : id.lhs) lhs *= factorial(v);
    id.holds = lhs == factorial(id.rhs);
  }
  return ids;
}

std::optional<std::uint64_t> odd_gap_obstruction(std::uint64_t n, std::uint64_t l,
                                                 const PrimeTable& table) {
  if (l >= n) throw InvalidArgument("l must be smaller than n");
  if (n % 2 != 0) throw ParityError("n must be even");
  const std::uint64_t a1 = n - l;
  if (a1 % 2 == 0) throw ParityError("n - l must be odd");
  if (a1 < 3) throw InvalidArgument("a1 = n - l must be >= 3");
  table.require(n, "n");
  const auto primes = table.primes();
  auto it = std::upper_bound(primes.begin(), primes.end(), a1);
  if (it == primes.begin()) return std::nullopt;
  const std::uint64_t p = *std::prev(it);
  if (p > n / 2) return p;
  return std::nullopt;
}

}  // namespace dfl

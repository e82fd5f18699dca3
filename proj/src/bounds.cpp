#include "dfl/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "dfl/arith.hpp"
#include "dfl/block.hpp"
#include "dfl/errors.hpp"

namespace dfl {

void BoundCheckResult::record(std::string_view at, double slack, bool holds) {
  ++checked;
  margin = std::min(margin, slack);
  if (holds) return;
  ++failures;
  if (counterexamples.size() < kMaxStored) counterexamples.push_back({std::string(at), slack});
}

void BoundCheckResult::merge(const BoundCheckResult& other) {
  checked += other.checked;
  failures += other.failures;
  margin = std::min(margin, other.margin);
  for (const auto& c : other.counterexamples)
    if (counterexamples.size() < kMaxStored) counterexamples.push_back(c);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

namespace {

bool strict_holds(double slack) { return slack > kCheckTolerance; }
bool weak_holds(double slack) { return slack >= -kCheckTolerance; }

std::string pair_label(std::uint64_t x, std::uint64_t k) {
  return "(" + std::to_string(x) + "," + std::to_string(k) + ")";
}

std::string instance_label(const EquationInstance& inst) {
  std::ostringstream s;
  s << "n=" << inst.n() << " a={";
  for (std::size_t i = 0; i < inst.a().size(); ++i) s << (i ? "," : "") << inst.a()[i];
  s << "}";
  return s.str();
}

double log_double_factorial(std::uint64_t m) {
  double s = 0;
  for (std::uint64_t j = m; j >= 2; j -= 2) s += std::log(static_cast<double>(j));
  return s;
}

double log_factorial(std::uint64_t m) {
  double s = 0;
  for (std::uint64_t j = 2; j <= m; ++j) s += std::log(static_cast<double>(j));
  return s;
}

void require_prime_scan_range(std::uint64_t nu_max, const PrimeTable& table) {
  if (nu_max < 2) throw InvalidArgument("scan limit must be >= 2");
  table.require(nu_max, "nu_max");
}

}  // namespace

BoundCheckResult verify_theta_bound(std::uint64_t nu_max, const PrimeTable& table) {
  require_prime_scan_range(nu_max, table);
  BoundCheckResult res{.name = "theta_bound",
                       .domain_checked = "primes nu <= " + std::to_string(nu_max)};
  double theta = 0;
  for (std::uint64_t p : table.primes()) {
    if (p > nu_max) break;
    theta += std::log(static_cast<double>(p));
    const double slack = kThetaFactor * static_cast<double>(p) - theta;
    res.record("nu=" + std::to_string(p), slack, strict_holds(slack));
  }
  return res;
}

BoundCheckResult verify_mertens_bound(std::uint64_t nu_max, const PrimeTable& table) {
  require_prime_scan_range(nu_max, table);
  BoundCheckResult res{.name = "mertens_bound",
                       .domain_checked = "primes nu <= " + std::to_string(nu_max)};
  double sum = 0;
  for (std::uint64_t p : table.primes()) {
    if (p > nu_max) break;
    const double lp = std::log(static_cast<double>(p));
    sum += lp / static_cast<double>(p);
    const double slack = lp - sum;
    res.record("nu=" + std::to_string(p), slack, strict_holds(slack));
  }
  return res;
}

bool check_composite_block_geometry(std::uint64_t x, std::uint64_t k, const PrimeTable& table) {
  if (k < 2) throw InvalidArgument("block length must be >= 2");
  const BlockReport b = analyze_block(x, k, table);
  return !b.all_composite || x >= k;
}

BoundCheckResult composite_block_geometry_sweep(std::uint64_t k_max, const PrimeTable& table) {
  if (k_max < 2) throw InvalidArgument("k_max must be >= 2");
  table.require(2 * k_max, "sweep end");
  BoundCheckResult res{.name = "composite_block_geometry",
                       .domain_checked = "2 <= x < k <= " + std::to_string(k_max)};
  for (std::uint64_t k = 3; k <= k_max; ++k) {
    for (std::uint64_t x = 2; x < k; ++x) {
      std::uint64_t primes_in_block = 0;
      for (std::uint64_t n = x; n < x + k; ++n) primes_in_block += table.is_prime(n);
      res.record(pair_label(x, k), static_cast<double>(primes_in_block), primes_in_block > 0);
    }
  }
  return res;
}

BoundCheckResult sandwich_check(const EquationInstance& inst, const PrimeTable& table) {
  if (!check_identity(inst, table)) throw NotASolution("sandwich check needs a verified solution");
  const std::size_t r = inst.r();
  if (r > 1) throw InvalidArgument("sandwich check covers r in {0, 1} only");

  BoundCheckResult res{.name = r == 0 ? "sandwich_even" : "sandwich_odd",
                       .domain_checked = instance_label(inst)};
  const std::uint64_t big_n = inst.n() / 2;

  if (r == 0) {
    const std::uint64_t a1 = inst.a()[0];
    const std::uint64_t a2 = inst.a()[1];
    const std::uint64_t m = a1 / 2 + 1;
    const std::uint64_t k = big_n - a1 / 2;
    const double la2 = static_cast<double>(a2);
    const double log_df = log_double_factorial(a2);

    const double lower = la2 * std::log(la2) - la2;
    res.record("lower: a2 ln a2 - a2 <= ln(a2!!), a2=" + std::to_string(a2), log_df - lower,
               weak_holds(log_df - lower));

    if (analyze_block(m, k, table).all_composite) {
      const double upper = static_cast<double>(k) * std::log(4.0 * static_cast<double>(m));
      res.record("upper: ln(a2!!) <= k ln(4m), m=" + std::to_string(m) + " k=" + std::to_string(k),
                 upper - log_df, weak_holds(upper - log_df));
    } else {
      res.notes.push_back("upper bound skipped: block " + pair_label(m, k) + " contains a prime");
    }
    return res;
  }

  const auto d = decompose_odd(inst);
  if (!d) throw InvalidArgument("odd case needs at least two even factors");
  const std::uint64_t a1 = *std::find_if(inst.a().begin(), inst.a().end(),
                                         [](std::uint64_t v) { return v % 2 == 1; });
  const double fa1 = static_cast<double>(a1);
  const double log_fact = log_factorial(a1 + 1);
  const double lower = fa1 * std::log(fa1) - fa1;
  res.record("lower: a1 ln a1 - a1 <= ln((a1+1)!), a1=" + std::to_string(a1), log_fact - lower,
             weak_holds(log_fact - lower));

  const auto x1 = static_cast<std::uint64_t>(d->x1);
  const auto l1 = static_cast<std::uint64_t>(d->l1);
  if (analyze_block(x1, l1, table).all_composite) {
    const double upper =
        2.0 * static_cast<double>(l1) * std::log(4.0 * static_cast<double>(x1));
    res.record("upper: ln((a1+1)!) <= 2 l1 ln(4 x1), x1=" + std::to_string(x1) +
                   " l1=" + std::to_string(l1),
               upper - log_fact, weak_holds(upper - log_fact));
  } else {
    res.notes.push_back("upper bound skipped: block " + pair_label(x1, l1) + " contains a prime");
  }
  return res;
}

BoundCheckResult block_primality_check(const EquationInstance& inst, const PrimeTable& table) {
  if (!check_identity(inst, table)) throw NotASolution("block check needs a verified solution");
  if (inst.r() != 0) throw InvalidArgument("block primality check covers r = 0 only");
  const std::uint64_t m = inst.a()[0] / 2 + 1;
  const std::uint64_t k = inst.n() / 2 - inst.a()[0] / 2;
  BoundCheckResult res{.name = "block_has_no_prime",
                       .domain_checked = instance_label(inst) + " block " + pair_label(m, k)};
  for (std::uint64_t t = m; t < m + k; ++t) {
    const bool prime = table.is_prime(t);
    res.record("term " + std::to_string(t), prime ? 0.0 : 1.0, !prime);
  }
  return res;
}

ExceptionSet::ExceptionSet(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
}

const ExceptionSet& ExceptionSet::standard() {
  static const ExceptionSet set({
      {9, 2},    {14, 2},   {20, 2},  {24, 2},  {27, 2},  {35, 2},  {48, 2},  {49, 2},
      {63, 2},   {80, 2},   {125, 2}, {224, 2}, {2400, 2}, {4374, 2}, {13, 3}, {14, 3},
      {20, 3},   {24, 3},   {25, 3},  {26, 3},  {48, 3},  {54, 3},  {63, 3},  {64, 3},
      {98, 3},   {350, 3},  {24, 4},  {25, 4},  {32, 4},  {33, 4},  {48, 4},  {49, 4},
      {63, 4},   {24, 5},   {32, 5},  {48, 5},  {29, 7},  {30, 7},
  });
  return set;
}

bool ExceptionSet::contains(std::uint64_t x, std::uint64_t k) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{x, k});
}

BlockLpfScan theorem24_scan(std::uint64_t k_lo, std::uint64_t k_hi, std::uint64_t x_max,
                             const PrimeTable& table) {
  if (k_lo < 2 || k_hi < k_lo) throw InvalidArgument("k range must satisfy 2 <= k_lo <= k_hi");
  table.require(x_max + k_hi - 1, "x_max + k - 1");

  BlockLpfScan scan;
  scan.result.name = "block_lpf_bound";
  scan.result.domain_checked = "k in [" + std::to_string(k_lo) + "," + std::to_string(k_hi) +
                               "], 4k < x <= " + std::to_string(x_max);
  const auto& exceptional = ExceptionSet::standard();

  std::vector<std::uint64_t> lpf(x_max + k_hi, 1);
  for (std::uint64_t n = 2; n < lpf.size(); ++n) lpf[n] = largest_prime_factor(n, table);

  for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
    for (std::uint64_t x = 4 * k + 1; x <= x_max; ++x) {
      const std::uint64_t p = *std::max_element(lpf.begin() + static_cast<std::ptrdiff_t>(x),
                                                lpf.begin() + static_cast<std::ptrdiff_t>(x + k));
      const bool holds = kBlockLpfDenominator * p > kBlockLpfNumerator * k;
      const double slack = static_cast<double>(p) - kBlockLpfFactor * static_cast<double>(k);
      const bool in_t = exceptional.contains(x, k);
      if (!holds) scan.exceptions.emplace_back(x, k);
      if (holds && in_t) scan.members_satisfying.emplace_back(x, k);
      if (!in_t) scan.result.record(pair_label(x, k), slack, holds);
    }
  }
  return scan;
}

std::optional<double> erdos_ratio(std::uint64_t x, std::uint64_t k, const PrimeTable& table) {
  if (k < 2) throw InvalidArgument("block length must be >= 2");
  const BlockReport b = analyze_block(x, k, table);
  if (!b.all_composite) return std::nullopt;
  const double kd = static_cast<double>(k);
  return static_cast<double>(b.lpf) / (kd * std::log(kd));
}

namespace {

// v2 <= k - 1 + log2(x + k)  <=>  v2 - (k - 1) <= 0 or 2^{v2-(k-1)} <= x + k.
bool val2_block_holds(std::uint64_t v2, std::uint64_t x, std::uint64_t k) {
  if (v2 + 1 <= k) return true;
  const std::uint64_t d = v2 + 1 - k;
  return d < 64 && (std::uint64_t{1} << d) <= x + k;
}

double val2_block_slack(std::uint64_t v2, std::uint64_t x, std::uint64_t k) {
  return static_cast<double>(k) - 1.0 + std::log2(static_cast<double>(x + k)) -
         static_cast<double>(v2);
}

}  // namespace

BoundCheckResult valuation2_block_bound_check(std::uint64_t x, std::uint64_t k,
                                              const PrimeTable& table) {
  const BlockReport b = analyze_block(x, k, table);
  BoundCheckResult res{.name = "block_val2_bound", .domain_checked = pair_label(x, k)};
  res.record(pair_label(x, k), val2_block_slack(b.val2, x, k), val2_block_holds(b.val2, x, k));
  return res;
}

BoundCheckResult valuation2_block_sweep(const Val2Sweep& sweep, const PrimeTable&) {
  if (sweep.x_max < 2 || sweep.k_max < 1) throw InvalidArgument("sweep needs x_max >= 2, k_max >= 1");
  // prefix[n] = v2(n!), so a block is a difference of two entries
  std::vector<std::uint64_t> prefix(sweep.x_max + sweep.k_max + 1, 0);
  for (std::uint64_t n = 1; n < prefix.size(); ++n)
    prefix[n] = prefix[n - 1] + static_cast<std::uint64_t>(std::countr_zero(n));

  BoundCheckResult res{.name = "block_val2_bound"};
  auto eval = [&](std::uint64_t x, std::uint64_t k) {
    const std::uint64_t v2 = prefix[x + k - 1] - prefix[x - 1];
    res.record(pair_label(x, k), val2_block_slack(v2, x, k), val2_block_holds(v2, x, k));
  };

  if (sweep.samples == 0) {
    res.domain_checked = "all 2 <= x <= " + std::to_string(sweep.x_max) +
                         ", 1 <= k <= " + std::to_string(sweep.k_max);
    for (std::uint64_t x = 2; x <= sweep.x_max; ++x)
      for (std::uint64_t k = 1; k <= sweep.k_max; ++k) eval(x, k);
  } else {
    res.domain_checked = std::to_string(sweep.samples) + " samples, x <= " +
                         std::to_string(sweep.x_max) + ", k <= " + std::to_string(sweep.k_max) +
                         ", seed " + std::to_string(sweep.seed);
    std::mt19937_64 rng(sweep.seed);
    std::uniform_int_distribution<std::uint64_t> xs(2, sweep.x_max);
    std::uniform_int_distribution<std::uint64_t> ks(1, sweep.k_max);
    for (std::uint64_t i = 0; i < sweep.samples; ++i) {
      const std::uint64_t x = xs(rng);
      eval(x, ks(rng));
    }
  }
  return res;
}

BoundCheckResult valuation2_factorial_lower_check(std::uint64_t m_max) {
  if (m_max < 1) throw InvalidArgument("m_max must be >= 1");
  BoundCheckResult res{.name = "factorial_val2_lower",
                       .domain_checked = "1 <= m <= " + std::to_string(m_max)};
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const auto v = static_cast<std::int64_t>(factorial_valuation(m, 2));
    const auto mi = static_cast<std::int64_t>(m);
    const bool holds = 100 * v > kVal2Percent * mi - 100 * kVal2Offset;
    const double slack = static_cast<double>(v) -
                         (static_cast<double>(kVal2Percent) / 100.0 * static_cast<double>(m) -
                          static_cast<double>(kVal2Offset));
    res.record("m=" + std::to_string(m), slack, holds);
  }
  return res;
}

double thm12ii_bound(std::uint64_t l1) {
  if (l1 < 1) throw InvalidArgument("l1 must be >= 1");
  const double l = static_cast<double>(l1);
  return (4.0 * l + kOddBoundConstant + 2.0 * std::log2(5.0) + 2.0 * std::log2(l)) /
         (static_cast<double>(kVal2Percent) / 100.0);
}

BoundCheckResult radical_product_bound_check(std::uint64_t x, std::uint64_t k,
                                             std::uint64_t a_bound, const PrimeTable& table) {
  if (k < 2) throw InvalidArgument("block length must be >= 2");
  table.require(a_bound, "a_bound");
  const BlockReport b = analyze_block(x, k, table);
  if (b.lpf > a_bound)
    throw HypothesisViolation("prime " + std::to_string(b.lpf) + " divides the block but exceeds a_bound " +
                              std::to_string(a_bound));

  std::vector<bool> deleted(k, false);
  double log_middle = 0;
  for (std::uint64_t p : table.primes()) {
    if (p > a_bound) break;
    const double lp = std::log(static_cast<double>(p));
    if (p >= k) {
      log_middle += lp;
      continue;
    }
    log_middle += static_cast<double>(k / p) * lp;
    std::uint64_t best_i = 0;
    std::uint32_t best_v = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
      const std::uint32_t v = valuation(x + i, p);
      if (v > best_v) {
        best_v = v;
        best_i = i;
      }
    }
    if (best_v > 0) deleted[best_i] = true;
  }

  double log_survivors = 0;
  std::uint64_t removed = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (deleted[i])
      ++removed;
    else
      log_survivors += std::log(static_cast<double>(b.term_radicals[i]));
  }
  const double kd = static_cast<double>(k);
  const double log_final = kThetaFactor * static_cast<double>(a_bound) + kd * std::log(kd);

  BoundCheckResult res{.name = "radical_product_bound",
                       .domain_checked = pair_label(x, k) + " a_bound=" + std::to_string(a_bound)};
  res.notes.push_back(std::to_string(removed) + " term(s) deleted");
  res.record("survivors <= prime product", log_middle - log_survivors,
             weak_holds(log_middle - log_survivors));
  res.record("prime product <= exp bound", log_final - log_middle, weak_holds(log_final - log_middle));
  res.record("survivors <= exp bound", log_final - log_survivors, weak_holds(log_final - log_survivors));
  return res;
}

TwoRadicals smallest_two_radicals(std::uint64_t x, std::uint64_t k, const PrimeTable& table) {
  if (k < 2) throw InvalidArgument("block length must be >= 2");
  const BlockReport b = analyze_block(x, k, table);
  std::vector<std::uint64_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::uint64_t i, std::uint64_t j) {
    return b.term_radicals[i] < b.term_radicals[j];
  });
  double log_prod = 0;
  for (std::uint64_t r : b.term_radicals) log_prod += std::log(static_cast<double>(r));
  const double log_bound = log_prod / static_cast<double>(k - 1);

  TwoRadicals out;
  out.j1 = idx[0];
  out.j2 = idx[1];
  out.rad1 = b.term_radicals[out.j1];
  out.rad2 = b.term_radicals[out.j2];
  out.bound = std::exp(log_bound);
  out.holds = std::log(static_cast<double>(out.rad2)) <= log_bound + kCheckTolerance;
  return out;
}

DusartCheck dusart_check(std::uint64_t y_lo, std::uint64_t y_hi, const PrimeTable& table) {
  if (y_lo < kDusartThreshold)
    throw DomainError("the prime interval is only claimed for y >= " + std::to_string(kDusartThreshold));
  if (y_hi < y_lo) throw InvalidArgument("empty y range");
  table.require(y_hi, "y");

  const std::string domain = "y in [" + std::to_string(y_lo) + "," + std::to_string(y_hi) + "]";
  DusartCheck out{.usage_form = {.name = "dusart_usage_form", .domain_checked = domain},
                  .literal_form = {.name = "dusart_literal_form", .domain_checked = domain}};
  const auto primes = table.primes();
  for (std::uint64_t y = y_lo; y <= y_hi; ++y) {
    // Largest prime strictly below y.
    auto it = std::lower_bound(primes.begin(), primes.end(), y);
    const double p = static_cast<double>(*std::prev(it));
    const double yd = static_cast<double>(y);
    const double l2 = std::log(yd) * std::log(yd);
    const double usage_lo = yd / (1.0 + 1.0 / (2.0 * l2));
    const double literal_lo = yd / (1.0 + 2.0 * l2);
    const std::string at = "y=" + std::to_string(y);
    out.usage_form.record(at, p - usage_lo, p > usage_lo);
    out.literal_form.record(at, p - literal_lo, p > literal_lo);
  }
  return out;
}

double erdos_graham_ratio(std::uint64_t n, const PrimeTable& table) {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  table.require(n + 1, "n + 1");
  const std::uint64_t p = std::max(largest_prime_factor(n, table), largest_prime_factor(n + 1, table));
  return static_cast<double>(p) / std::log(static_cast<double>(n));
}

}  // namespace dfl

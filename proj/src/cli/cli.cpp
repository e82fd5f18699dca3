#include "dfl/cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dfl/abc.hpp"
#include "dfl/arith.hpp"
#include "dfl/block.hpp"
#include "dfl/bounds.hpp"
#include "dfl/cli/records.hpp"
#include "dfl/cli/sieve_cache.hpp"
#include "dfl/equation.hpp"
#include "dfl/errors.hpp"

namespace dfl::cli {

namespace {

struct KRange {
  std::uint64_t lo = 2;
  std::uint64_t hi = 7;
};

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// "lo..hi" or a single value.
KRange parse_k_range(const std::string& s) {
  const auto dots = s.find("..");
  std::optional<std::uint64_t> lo;
  std::optional<std::uint64_t> hi;
  if (dots == std::string::npos) {
    lo = hi = parse_u64(s);
  } else {
    lo = parse_u64(std::string_view(s).substr(0, dots));
    hi = parse_u64(std::string_view(s).substr(dots + 2));
  }
  if (!lo || !hi) throw InvalidArgument("bad k range '" + s + "', expected LO..HI");
  return {*lo, *hi};
}

// Holds the parsed invocation and the records it produced.
class Session {
 public:
  Session(CommandConfig cfg, std::ostream& err) : cfg_(std::move(cfg)), err_(err) {}

  // A sieve covering at least `need`, grown past --sieve-limit when needed.
  const PrimeTable& table(std::uint64_t need = 0) {
    const std::uint64_t limit = std::max<std::uint64_t>({cfg_.sieve_limit, need, 2});
    if (limit > kMaxSieveLimit)
      throw ResourceLimit("command needs a sieve up to " + std::to_string(limit) + ", above the maximum " +
                       std::to_string(kMaxSieveLimit));
    if (!table_ || table_->limit() < limit) {
      SieveLoad load = load_or_build_sieve(limit, cfg_.cache_dir, err_);
      table_.emplace(std::move(load.table));
    }
    return *table_;
  }

  void emit(OutputRecord r) { records_.push_back(std::move(r)); }

  void emit_check(const BoundCheckResult& r) {
    if (!r.passed()) failed_ = true;
    emit(bound_check_record(r));
  }

  void mark_failed() { failed_ = true; }
  bool failed() const { return failed_; }
  const CommandConfig& config() const { return cfg_; }
  const std::vector<OutputRecord>& records() const { return records_; }

 private:
  CommandConfig cfg_;
  std::ostream& err_;
  std::optional<PrimeTable> table_;
  std::vector<OutputRecord> records_;
  bool failed_ = false;
};

ParityMode parse_mode(const std::string& s) {
  if (s == "r0") return ParityMode::r0;
  if (s == "r1") return ParityMode::r1;
  throw InvalidArgument("mode must be r0 or r1");
}

std::vector<SolutionRecord> run_search(Session& s, ParityMode mode, std::uint64_t n_max,
                                       std::size_t t_max) {
  SearchOptions opts{.n_max = n_max,
                     .t_max = t_max,
                     .mode = mode,
                     .threads = s.config().threads,
                     .node_budget = s.config().node_budget};
  return search(opts, s.table(n_max));
}

void apply_fallthrough(CLI::App* app) {
  app->fallthrough();
  for (CLI::App* sub : app->get_subcommands({})) apply_fallthrough(sub);
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double factorial equation lab: solution search, bound verification, abc triples"};
  app.name(argv.empty() ? "dfl" : argv.front());
  app.require_subcommand(1);

  std::string format = "jsonl";
  std::string cache_flag;
  CommandConfig cfg;
  app.add_option("--sieve-limit", cfg.sieve_limit, "Minimum sieve limit (grown to fit the command)")
      ->check(CLI::Range(std::uint64_t{2}, kMaxSieveLimit));
  app.add_option("--cache-dir", cache_flag,
                 std::string("Sieve cache directory (default $") + kCacheDirEnv + ")");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl", "csv", "human"}));
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = auto");
  app.add_option("--node-budget", cfg.node_budget, "Search node limit")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));

  // search
  std::string mode;
  std::uint64_t n_max = 0;
  std::size_t t_max = 3;
  auto* search_cmd = app.add_subcommand("search", "Exhaustive solution search");
  search_cmd->add_option("--mode", mode, "Parity regime r0 or r1")->required()->check(CLI::IsMember({"r0", "r1"}));
  search_cmd->add_option("--n-max", n_max, "Largest n")->required();
  search_cmd->add_option("--t-max", t_max, "Largest number of factors")->capture_default_str();

  // classify
  std::uint64_t cl_n = 0;
  std::vector<std::uint64_t> cl_a;
  auto* classify_cmd = app.add_subcommand("classify", "Verify and classify one instance");
  classify_cmd->add_option("--n", cl_n)->required();
  classify_cmd->add_option("--a", cl_a, "Factors, comma separated")->required()->delimiter(',');

  // generate
  std::vector<std::uint64_t> gen_evens;
  std::uint64_t gen_a1 = 0;
  auto* generate_cmd = app.add_subcommand("generate", "Build a member of a trivial family");
  generate_cmd->require_subcommand(1);
  auto* gen_even = generate_cmd->add_subcommand("trivial-even", "n = prod e!!, a = evens + {n-2}");
  gen_even->add_option("--evens", gen_evens, "Even operands >= 4")->required()->delimiter(',');
  auto* gen_odd = generate_cmd->add_subcommand("trivial-odd", "n = a1! prod e!!");
  gen_odd->add_option("--a1", gen_a1, "Odd a1 >= 5")->required();
  gen_odd->add_option("--evens", gen_evens, "Even operands >= 4")->delimiter(',');

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Scan an explicit inequality");
  verify_cmd->require_subcommand(1);
  std::uint64_t nu_max = 1'000'000;
  auto* v_lemma21 = verify_cmd->add_subcommand("lemma21", "theta(nu) < 1.00008 nu and sum ln p/p < ln nu");
  v_lemma21->add_option("--nu-max", nu_max)->capture_default_str();

  std::uint64_t even_n_max = 200;
  std::uint64_t odd_n_max = 400;
  std::size_t lem_t_max = 3;
  std::uint64_t geom_k_max = 50;
  auto* v_lemma22 = verify_cmd->add_subcommand("lemma22", "Even-case block and sandwich bounds on r0 solutions");
  v_lemma22->add_option("--n-max", even_n_max)->capture_default_str();
  v_lemma22->add_option("--t-max", lem_t_max)->capture_default_str();
  v_lemma22->add_option("--k-max", geom_k_max, "Composite-block geometry sweep")->capture_default_str();
  auto* v_lemma23 = verify_cmd->add_subcommand("lemma23", "Odd-case sandwich bounds on r1 solutions");
  v_lemma23->add_option("--n-max", odd_n_max)->capture_default_str();
  v_lemma23->add_option("--t-max", lem_t_max)->capture_default_str();
  v_lemma23->add_option("--k-max", geom_k_max, "Composite-block geometry sweep")->capture_default_str();

  std::string k_range = "2..7";
  std::uint64_t x_max = 5000;
  auto* v_thm24 = verify_cmd->add_subcommand("thm24", "P(D(x,k)) > 4.42k for x > 4k outside the exceptional set");
  v_thm24->add_option("--k", k_range, "k range LO..HI")->capture_default_str();
  v_thm24->add_option("--x-max", x_max)->capture_default_str();

  std::uint64_t m_max = 1'000'000;
  Val2Sweep sweep{.samples = 10'000};
  auto* v_val2 = verify_cmd->add_subcommand("val2", "2-adic bounds for factorials and blocks");
  v_val2->add_option("--m-max", m_max)->capture_default_str();
  v_val2->add_option("--x-max", sweep.x_max)->capture_default_str();
  v_val2->add_option("--k-max", sweep.k_max)->capture_default_str();
  v_val2->add_option("--samples", sweep.samples, "0 = exhaustive")->capture_default_str();
  v_val2->add_option("--seed", sweep.seed)->capture_default_str();

  std::uint64_t y_min = kDusartThreshold;
  std::uint64_t y_max = 100'000;
  auto* v_dusart = verify_cmd->add_subcommand("dusart", "Prime in the interval below y, both forms");
  v_dusart->add_option("--y-min", y_min)->capture_default_str();
  v_dusart->add_option("--y-max", y_max)->capture_default_str();

  auto* v_known = verify_cmd->add_subcommand("known-factorials", "The five nontrivial factorial identities");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate a closed-form bound");
  bound_cmd->require_subcommand(1);
  std::uint64_t l1 = 1;
  auto* b_thm12 = bound_cmd->add_subcommand("thm12ii", "Upper bound on a1 when x1 <= 4 l1");
  b_thm12->add_option("--l1", l1)->required();
  std::uint64_t iq_k = 2;
  std::uint64_t iq_a2 = 3;
  std::uint64_t iq_m = 2;
  auto* b_ineq3 = bound_cmd->add_subcommand("ineq3", "k ln m against the explicit-abc right-hand side");
  b_ineq3->add_option("--k", iq_k)->required();
  b_ineq3->add_option("--a2", iq_a2)->required();
  b_ineq3->add_option("--m", iq_m)->required();

  // abc
  auto* abc_cmd = app.add_subcommand("abc", "abc triples");
  abc_cmd->require_subcommand(1);
  std::uint64_t abc_a = 0;
  std::uint64_t abc_b = 0;
  auto* abc_triple = abc_cmd->add_subcommand("triple", "Normalize and evaluate a + b = c");
  abc_triple->add_option("--a", abc_a)->required();
  abc_triple->add_option("--b", abc_b)->required();
  std::uint64_t px = 0;
  std::uint64_t pj1 = 0;
  std::uint64_t pj2 = 0;
  auto* abc_proof = abc_cmd->add_subcommand("proof-triple", "(x+j1) - (x+j2) = j1 - j2 over d");
  abc_proof->add_option("--x", px)->required();
  abc_proof->add_option("--j1", pj1)->required();
  abc_proof->add_option("--j2", pj2)->required();
  std::uint64_t sx = 0;
  std::uint64_t sk = 2;
  std::uint64_t sx_max = 0;
  auto* abc_scan = abc_cmd->add_subcommand("scan", "Best proof triple of a block, or of every block up to --x-max");
  abc_scan->add_option("--x", sx)->required();
  abc_scan->add_option("--k", sk)->required();
  abc_scan->add_option("--x-max", sx_max, "Scan blocks x..x-max");

  // block
  auto* block_cmd = app.add_subcommand("block", "Consecutive-integer blocks");
  block_cmd->require_subcommand(1);
  std::uint64_t bx = 0;
  std::uint64_t bk = 1;
  std::uint64_t a_bound = 0;
  auto* blk_analyze = block_cmd->add_subcommand("analyze", "Largest prime, 2-adic valuation, radicals");
  blk_analyze->add_option("--x", bx)->required();
  blk_analyze->add_option("--k", bk)->required();
  auto* blk_radicals = block_cmd->add_subcommand("radicals", "Radical-product bound and the two smallest radicals");
  blk_radicals->add_option("--x", bx)->required();
  blk_radicals->add_option("--k", bk)->required();
  blk_radicals->add_option("--a-bound", a_bound, "Bound on prime divisors (default: block lpf)");

  // ratio
  auto* ratio_cmd = app.add_subcommand("ratio", "Exploratory ratios");
  ratio_cmd->require_subcommand(1);
  std::uint64_t rn = 2;
  std::uint64_t rn_to = 0;
  auto* r_eg = ratio_cmd->add_subcommand("erdos-graham", "P(n(n+1)) / ln n");
  r_eg->add_option("--n", rn)->required();
  r_eg->add_option("--to", rn_to, "Emit every n up to this value");
  auto* r_eb = ratio_cmd->add_subcommand("erdos-block", "P(D(x,k)) / (k ln k) for composite blocks");
  r_eb->add_option("--x", bx)->required();
  r_eb->add_option("--k", bk)->required();

  apply_fallthrough(&app);

  std::vector<std::string> reversed(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  cfg.output_format = *parse_format(format);
  cfg.cache_dir = resolve_cache_dir(cache_flag);
  Session s(cfg, err);

  try {
    if (search_cmd->parsed()) {
      for (const auto& rec : run_search(s, parse_mode(mode), n_max, t_max)) s.emit(solution_record(rec));
    } else if (classify_cmd->parsed()) {
      const EquationInstance inst(cl_n, cl_a);
      s.emit(solution_record(classify(inst, s.table(cl_n))));
    } else if (gen_even->parsed() || gen_odd->parsed()) {
      const EquationInstance inst = gen_even->parsed() ? generate_trivial_even(gen_evens, kMaxSieveLimit)
                                                       : generate_trivial_odd(gen_a1, gen_evens, kMaxSieveLimit);
      s.emit(solution_record(classify(inst, s.table(inst.n()))));
    } else if (v_lemma21->parsed()) {
      const PrimeTable& t = s.table(nu_max);
      s.emit_check(verify_theta_bound(nu_max, t));
      s.emit_check(verify_mertens_bound(nu_max, t));
    } else if (v_lemma22->parsed() || v_lemma23->parsed()) {
      const bool even = v_lemma22->parsed();
      const std::uint64_t lem_n_max = even ? even_n_max : odd_n_max;
      const auto sols = run_search(s, even ? ParityMode::r0 : ParityMode::r1, lem_n_max, lem_t_max);
      const PrimeTable& t = s.table(std::max(lem_n_max, 2 * geom_k_max));
      std::uint64_t skipped = 0;
      for (const auto& sol : sols) {
        if (!even && !decompose_odd(sol.instance)) {
          ++skipped;
          continue;
        }
        s.emit_check(sandwich_check(sol.instance, t));
        if (even) s.emit_check(block_primality_check(sol.instance, t));
      }
      s.emit_check(composite_block_geometry_sweep(geom_k_max, t));
      s.emit(summary_record(even ? "lemma22" : "lemma23",
                            Json{{"n_max", lem_n_max}, {"t_max", lem_t_max}, {"solutions", sols.size()},
                                 {"skipped", skipped}}));
    } else if (v_thm24->parsed()) {
      const KRange kr = parse_k_range(k_range);
      const BlockLpfScan scan = theorem24_scan(kr.lo, kr.hi, x_max, s.table(x_max + kr.hi));
      Json exc = Json::array();
      Json outside = Json::array();
      for (const auto& [x, k] : scan.exceptions) {
        exc.push_back(Json::array({x, k}));
        if (!ExceptionSet::standard().contains(x, k)) outside.push_back(Json::array({x, k}));
      }
      Json sat = Json::array();
      for (const auto& [x, k] : scan.members_satisfying) sat.push_back(Json::array({x, k}));
      s.emit(summary_record("thm24_exceptions", Json{{"k_lo", kr.lo},
                                                     {"k_hi", kr.hi},
                                                     {"x_max", x_max},
                                                     {"exceptions", exc},
                                                     {"outside_exceptional_set", outside},
                                                     {"members_satisfying_bound", sat}}));
      s.emit_check(scan.result);
    } else if (v_val2->parsed()) {
      s.emit_check(valuation2_factorial_lower_check(m_max));
      s.emit_check(valuation2_block_sweep(sweep, s.table()));
    } else if (v_dusart->parsed()) {
      const DusartCheck d = dusart_check(y_min, y_max, s.table(y_max));
      s.emit_check(d.usage_form);
      s.emit_check(d.literal_form);
    } else if (v_known->parsed()) {
      for (const auto& id : verify_known_factorial_solutions()) {
        if (!id.holds) s.mark_failed();
        s.emit(summary_record("known_factorial_identity",
                              Json{{"identity", id.label}, {"lhs", id.lhs}, {"rhs", id.rhs}, {"holds", id.holds}}));
      }
    } else if (b_thm12->parsed()) {
      s.emit(summary_record("thm12ii_bound", Json{{"l1", l1}, {"a1_bound", thm12ii_bound(l1)}}));
    } else if (b_ineq3->parsed()) {
      const Inequality3 r = inequality3_rhs(iq_k, iq_a2, iq_m);
      s.emit(summary_record("inequality3", Json{{"k", iq_k},
                                                {"a2", iq_a2},
                                                {"m", iq_m},
                                                {"lhs", r.lhs},
                                                {"rhs", r.rhs},
                                                {"holds", r.holds}}));
    } else if (abc_triple->parsed()) {
      s.emit(triple_record(make_triple(abc_a, abc_b, s.table(abc_a + abc_b))));
    } else if (abc_proof->parsed()) {
      s.emit(proof_triple_record(proof_triple(px, pj1, pj2, s.table(px + std::max(pj1, pj2)))));
    } else if (abc_scan->parsed()) {
      if (sx_max == 0) {
        s.emit(proof_triple_record(scan_block_triples(sx, sk, s.table(sx + sk))));
      } else {
        const ProofTripleScan scan =
            scan_proof_triples(sx, sx_max, sk, s.table(sx_max + sk), s.config().threads);
        s.emit(summary_record("proof_triple_scan", Json{{"x_lo", scan.x_lo},
                                                        {"x_hi", scan.x_hi},
                                                        {"k", scan.k},
                                                        {"triples", scan.triples},
                                                        {"explicit_violations", scan.explicit_violations.size()},
                                                        {"best", to_json(scan.best)}}));
        // Violations are findings about the conjecture, not failures of the tool.
        for (const auto& v : scan.explicit_violations) s.emit(proof_triple_record(v));
      }
    } else if (blk_analyze->parsed()) {
      s.emit(summary_record("block_report", to_json(analyze_block(bx, bk, s.table(bx + bk)))));
    } else if (blk_radicals->parsed()) {
      const PrimeTable& t = s.table(bx + bk);
      const std::uint64_t bound = a_bound ? a_bound : analyze_block(bx, bk, t).lpf;
      s.emit_check(radical_product_bound_check(bx, bk, bound, s.table(std::max(bx + bk, bound))));
      const TwoRadicals tr = smallest_two_radicals(bx, bk, t);
      s.emit(summary_record("smallest_two_radicals", Json{{"x", bx},
                                                          {"k", bk},
                                                          {"j1", tr.j1},
                                                          {"j2", tr.j2},
                                                          {"rad1", tr.rad1},
                                                          {"rad2", tr.rad2},
                                                          {"bound", tr.bound},
                                                          {"holds", tr.holds}}));
      if (!tr.holds) s.mark_failed();
    } else if (r_eg->parsed()) {
      const std::uint64_t hi = std::max(rn, rn_to);
      const PrimeTable& t = s.table(hi + 1);
      for (std::uint64_t n = rn; n <= hi; ++n) {
        const std::uint64_t p = std::max(largest_prime_factor(n, t), largest_prime_factor(n + 1, t));
        s.emit(summary_record("erdos_graham_ratio", Json{{"n", n}, {"lpf", p}, {"ratio", erdos_graham_ratio(n, t)}}));
      }
    } else if (r_eb->parsed()) {
      const auto ratio = erdos_ratio(bx, bk, s.table(bx + bk));
      Json fields{{"x", bx}, {"k", bk}};
      fields["ratio"] = ratio ? Json(*ratio) : Json(nullptr);
      s.emit(summary_record("erdos_block_ratio", fields));
    }
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResourceLimit;
  } catch (const NotASolution& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  write_records(out, cfg.output_format, s.records());
  out.flush();
  return s.failed() ? kExitVerificationFailure : kExitOk;
}

}  // namespace dfl::cli

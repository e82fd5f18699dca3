#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfl/cli/cli.hpp"
#include "dfl/cli/output.hpp"
#include "dfl/cli/records.hpp"
#include "dfl/cli/sieve_cache.hpp"
#include "dfl/errors.hpp"

using namespace dfl;
using namespace dfl::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_in_process(std::vector<std::string> args) {
  args.insert(args.begin(), "dfl");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dfl-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

// Spawns the real binary; returns exit status and stdout.
RunResult spawn(const std::string& args) {
  const std::string cmd = std::string(DFL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, {}};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("jsonl records round-trip") {
  OutputRecord r{.kind = "bound_check", .payload = Json{{"name", "x"}, {"margin", 0.1}, {"at", Json::array({1, 2})}}};
  const std::string line = encode_jsonl(r);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(decode_jsonl(line) == r);
  CHECK(line.rfind(R"({"kind":"bound_check","schema_version":1,"payload":{"name":"x")", 0) == 0);
  CHECK_THROWS(decode_jsonl("{\"kind\":1}"));
}

TEST_CASE("csv header groups and quoting") {
  std::vector<OutputRecord> recs{
      {.kind = "triple", .payload = Json{{"a", 1}, {"note", "x,\"y\""}}},
      {.kind = "triple", .payload = Json{{"a", 2}, {"note", "plain"}}},
      {.kind = "scan_summary", .payload = Json{{"name", "s"}, {"list", Json::array({1, 2})}}},
  };
  std::ostringstream out;
  write_csv(out, recs);
  const auto ls = lines(out.str());
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "kind,schema_version,a,note");
  CHECK(ls[1] == R"(triple,1,1,"x,""y""")");
  CHECK(ls[3] == "kind,schema_version,name,list");
  const auto rows = read_csv(out.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][3].second == "x,\"y\"");
  CHECK(rows[2][3].second == "[1,2]");
  CHECK(parse_format("csv") == OutputFormat::csv);
  CHECK_FALSE(parse_format("xml").has_value());
}

TEST_CASE("jsonl and csv carry the same records") {
  TempDir dir;
  const std::string cache = "--cache-dir=" + dir.path.string();
  const std::vector<std::vector<std::string>> commands{
      {cache, "search", "--mode", "r1", "--n-max", "200", "--t-max", "3"},
      {cache, "verify", "thm24", "--k", "2..3", "--x-max", "400"},
      {cache, "abc", "scan", "--x", "24", "--k", "5"},
      {cache, "verify", "known-factorials"},
  };
  for (auto args : commands) {
    const RunResult js = run_in_process(args);
    args.insert(args.begin(), "--format=csv");
    const RunResult cs = run_in_process(args);
    CHECK(js.code == cs.code);
    const auto json_lines = lines(js.out);
    const auto rows = read_csv(cs.out);
    REQUIRE(json_lines.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const OutputRecord rec = decode_jsonl(json_lines[i]);
      const auto& row = rows[i];
      REQUIRE(row.size() == rec.payload.size() + 2);
      CHECK(row[0].second == rec.kind);
      CHECK(row[1].second == std::to_string(rec.schema_version));
      std::size_t col = 2;
      for (const auto& [key, value] : rec.payload.items()) {
        CHECK(row[col].first == key);
        CHECK(row[col].second == csv_cell(value));
        ++col;
      }
    }
  }
}

TEST_CASE("sieve cache write and read") {
  TempDir dir;
  const fs::path file = dir.path / kCacheFileName;
  const PrimeTable t(10'000);
  write_sieve_cache(file, t);
  CHECK(fs::file_size(file) == kCacheHeaderSize + 4 * 10'001);
  std::ifstream in(file, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  CHECK(std::string(magic, 4) == "DFL1");
  std::string why;
  const auto back = read_sieve_cache(file, &why);
  REQUIRE(back.has_value());
  CHECK(back->limit() == 10'000);
  CHECK(back->primes().size() == t.primes().size());
  CHECK_FALSE(read_sieve_cache(dir.path / "missing", &why).has_value());
}

TEST_CASE("sieve cache rejects damaged files") {
  TempDir dir;
  const fs::path file = dir.path / kCacheFileName;
  write_sieve_cache(file, PrimeTable(1000));
  std::string why;
  SUBCASE("truncated") {
    fs::resize_file(file, fs::file_size(file) - 10);
    CHECK_FALSE(read_sieve_cache(file, &why).has_value());
  }
  SUBCASE("flipped payload byte") {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(kCacheHeaderSize + 400);
    f.put(char(0x7f));
    f.close();
    CHECK_FALSE(read_sieve_cache(file, &why).has_value());
    CHECK(why.find("checksum") != std::string::npos);
  }
  SUBCASE("bad magic") {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.put('X');
    f.close();
    CHECK_FALSE(read_sieve_cache(file, &why).has_value());
  }
  CHECK_FALSE(why.empty());
}

TEST_CASE("sieve cache lifecycle") {
  TempDir dir;
  std::ostringstream log;
  const SieveLoad cold = load_or_build_sieve(1'000'000, dir.path, log);
  CHECK_FALSE(cold.loaded);
  CHECK(cold.persisted);
  CHECK(fs::exists(dir.path / kCacheFileName));
  const SieveLoad warm = load_or_build_sieve(1'000'000, dir.path, log);
  CHECK(warm.loaded);
  CHECK(warm.table.primes().size() == 78498);
  const SieveLoad smaller = load_or_build_sieve(1000, dir.path, log);
  CHECK(smaller.loaded);
  CHECK(smaller.table.limit() == 1000);
  CHECK(fs::file_size(dir.path / kCacheFileName) == kCacheHeaderSize + 4 * 1'000'001);
  fs::resize_file(dir.path / kCacheFileName, 100);
  std::ostringstream warn;
  const SieveLoad rebuilt = load_or_build_sieve(1000, dir.path, warn);
  CHECK_FALSE(rebuilt.loaded);
  CHECK_FALSE(warn.str().empty());
  CHECK(rebuilt.table.primes().size() == 168);
  const SieveLoad none = load_or_build_sieve(1000, {}, log);
  CHECK_FALSE(none.persisted);
}

TEST_CASE("unwritable cache directory still works") {
  TempDir dir;
  const fs::path blocker = dir.path / "file";
  std::ofstream(blocker) << "x";
  std::ostringstream warn;
  const SieveLoad s = load_or_build_sieve(1000, blocker / "sub", warn);
  CHECK_FALSE(s.persisted);
  CHECK(s.table.limit() == 1000);
  CHECK_FALSE(warn.str().empty());
}

TEST_CASE("cache directory resolution") {
  CHECK(resolve_cache_dir("/tmp/x") == fs::path("/tmp/x"));
  ::setenv(kCacheDirEnv, "/tmp/from-env", 1);
  CHECK(resolve_cache_dir("") == fs::path("/tmp/from-env"));
  ::unsetenv(kCacheDirEnv);
  ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
  CHECK(resolve_cache_dir("") == fs::path("/tmp/xdg/dfl"));
  ::unsetenv("XDG_CACHE_HOME");
}

TEST_CASE("search command output") {
  TempDir dir;
  const RunResult r = run_in_process({"--cache-dir", dir.path.string(), "search", "--mode", "r0", "--n-max", "20",
                                      "--t-max", "2"});
  CHECK(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 1);
  const OutputRecord rec = decode_jsonl(ls[0]);
  CHECK(rec.kind == "solution");
  CHECK(rec.payload["n"] == 8);
  CHECK(rec.payload["a"] == Json::array({6, 4}));
  CHECK(rec.payload["classification"] == "trivial-even");
}

TEST_CASE("verify commands and their exit codes") {
  TempDir dir;
  const std::string cache = "--cache-dir=" + dir.path.string();
  const RunResult l21 = run_in_process({cache, "verify", "lemma21", "--nu-max", "1000000"});
  CHECK(l21.code == kExitOk);
  for (const auto& l : lines(l21.out)) {
    const auto rec = decode_jsonl(l);
    CHECK(rec.payload["passed"] == true);
    CHECK(rec.payload["margin"].get<double>() > 0);
  }
  // The one pair outside the exceptional set makes the scan fail.
  const RunResult thm = run_in_process({cache, "verify", "thm24", "--k", "2..7", "--x-max", "5000"});
  CHECK(thm.code == kExitVerificationFailure);
  const auto recs = lines(thm.out);
  REQUIRE(recs.size() == 2);
  CHECK(decode_jsonl(recs[0]).payload["outside_exceptional_set"] == Json::array({Json::array({15, 2})}));
  CHECK(run_in_process({cache, "verify", "dusart"}).code == kExitVerificationFailure);
  CHECK(run_in_process({cache, "verify", "val2", "--m-max", "100000", "--samples", "1000"}).code == kExitOk);
  CHECK(run_in_process({cache, "verify", "lemma23"}).code == kExitOk);
  CHECK(run_in_process({cache, "verify", "known-factorials"}).code == kExitOk);
  CHECK(run_in_process({cache, "classify", "--n", "10", "--a", "6,4"}).code == kExitVerificationFailure);
}

TEST_CASE("usage errors and resource limits") {
  TempDir dir;
  const std::string cache = "--cache-dir=" + dir.path.string();
  CHECK(run_in_process({}).code == kExitUsage);
  CHECK(run_in_process({"frobnicate"}).code == kExitUsage);
  CHECK(run_in_process({"search", "--mode", "r2", "--n-max", "10"}).code == kExitUsage);
  CHECK(run_in_process({"search", "--mode", "r0"}).code == kExitUsage);
  CHECK(run_in_process({"--format", "xml", "verify", "known-factorials"}).code == kExitUsage);
  CHECK(run_in_process({"--node-budget", "0", "verify", "known-factorials"}).code == kExitUsage);
  CHECK(run_in_process({cache, "search", "--mode", "r1", "--n-max", "20", "--t-max", "2"}).code == kExitUsage);
  CHECK(run_in_process({cache, "verify", "dusart", "--y-min", "100"}).code == kExitUsage);
  CHECK(run_in_process({cache, "abc", "proof-triple", "--x", "9", "--j1", "1", "--j2", "1"}).code == kExitUsage);
  CHECK(run_in_process({cache, "--node-budget", "5", "search", "--mode", "r1", "--n-max", "400"}).code ==
        kExitResourceLimit);
  CHECK(run_in_process({cache, "search", "--mode", "r0", "--n-max", "900000000"}).code == kExitResourceLimit);
}

TEST_CASE("every command has help") {
  const std::vector<std::vector<std::string>> paths{
      {},
      {"search"},
      {"classify"},
      {"generate"},
      {"generate", "trivial-even"},
      {"generate", "trivial-odd"},
      {"verify"},
      {"verify", "lemma21"},
      {"verify", "lemma22"},
      {"verify", "lemma23"},
      {"verify", "thm24"},
      {"verify", "val2"},
      {"verify", "dusart"},
      {"verify", "known-factorials"},
      {"bound"},
      {"bound", "thm12ii"},
      {"bound", "ineq3"},
      {"abc"},
      {"abc", "triple"},
      {"abc", "proof-triple"},
      {"abc", "scan"},
      {"block"},
      {"block", "analyze"},
      {"block", "radicals"},
      {"ratio"},
      {"ratio", "erdos-graham"},
      {"ratio", "erdos-block"},
  };
  for (auto p : paths) {
    p.push_back("--help");
    const RunResult r = run_in_process(p);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
}

TEST_CASE("remaining commands produce records") {
  TempDir dir;
  const std::string cache = "--cache-dir=" + dir.path.string();
  const auto single = [&](std::vector<std::string> args) {
    args.insert(args.begin(), cache);
    const RunResult r = run_in_process(args);
    CHECK(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE_FALSE(ls.empty());
    return decode_jsonl(ls[0]);
  };
  CHECK(single({"generate", "trivial-even", "--evens", "6,4"}).payload["n"] == 384);
  CHECK(single({"generate", "trivial-odd", "--a1", "5"}).payload["classification"] == "trivial-odd");
  CHECK(single({"bound", "thm12ii", "--l1", "10"}).payload["a1_bound"].get<double>() ==
        doctest::Approx(55.85628).epsilon(1e-6));
  CHECK(single({"bound", "ineq3", "--k", "10", "--a2", "3", "--m", "1000000000"}).payload["holds"] == false);
  CHECK(single({"abc", "triple", "--a", "1", "--b", "4374"}).payload["rad"] == 210);
  CHECK(single({"abc", "proof-triple", "--x", "9", "--j1", "1", "--j2", "0"}).payload["c"] == 10);
  CHECK(single({"abc", "scan", "--x", "2", "--k", "3", "--x-max", "5000"}).payload["explicit_violations"] == 0);
  CHECK(single({"block", "analyze", "--x", "9", "--k", "2"}).payload["term_radicals"] == Json::array({3, 10}));
  CHECK(single({"block", "radicals", "--x", "24", "--k", "4"}).payload["passed"] == true);
  CHECK(single({"ratio", "erdos-graham", "--n", "8"}).payload["lpf"] == 3);
  CHECK(single({"ratio", "erdos-block", "--x", "13", "--k", "3"}).payload["ratio"].is_null());
  const RunResult human = run_in_process({cache, "--format", "human", "abc", "triple", "--a", "1", "--b", "8"});
  CHECK(human.out.rfind("[triple] ", 0) == 0);
}

TEST_CASE("binary exit codes and determinism") {
  TempDir dir;
  const std::string cache = "--cache-dir " + dir.path.string();
  CHECK(spawn(cache + " search --mode r0 --n-max 20 --t-max 2").code == 0);
  CHECK(spawn(cache + " verify thm24 --k 2..7 --x-max 5000").code == 1);
  CHECK(spawn("--no-such-flag").code == 2);
  CHECK(spawn("--help").code == 0);
  CHECK(spawn(cache + " --node-budget 3 search --mode r1 --n-max 400 --t-max 3").code == 3);
  const RunResult one = spawn(cache + " --threads 1 search --mode r1 --n-max 400 --t-max 3");
  const RunResult four = spawn(cache + " --threads 4 search --mode r1 --n-max 400 --t-max 3");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(lines(one.out).size() == 7);
  // A truncated cache is rebuilt without failing the command.
  fs::resize_file(dir.path / kCacheFileName, 64);
  CHECK(spawn(cache + " verify known-factorials").code == 0);
}

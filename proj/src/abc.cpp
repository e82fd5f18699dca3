#include "dfl/abc.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dfl/arith.hpp"
#include "dfl/bounds.hpp"
#include "dfl/errors.hpp"
#include "dfl/parallel.hpp"

namespace dfl {

namespace {

constexpr double kExplicitExponent =
    static_cast<double>(kExplicitAbcNum) / static_cast<double>(kExplicitAbcDen);

}  // namespace

AbcTriple make_triple(std::uint64_t a, std::uint64_t b, const PrimeTable& table) {
  if (a == 0 || b == 0) throw InvalidArgument("abc triple needs nonzero a and b");
  const std::uint64_t g = std::gcd(a, b);
  a /= g;
  b /= g;
  if (a > b) std::swap(a, b);
  const std::uint64_t c = a + b;
  table.require(c, "c");

  AbcTriple t{.a = a, .b = b, .c = c};
  t.rad = radical(a, table) * radical(b, table) * radical(c, table);
  const double lc = std::log(static_cast<double>(c));
  const double lr = std::log(static_cast<double>(t.rad));
  t.quality = lc / lr;
  t.explicit_ok = boost::multiprecision::pow(BigInt(c), kExplicitAbcDen) <
                  boost::multiprecision::pow(BigInt(t.rad), kExplicitAbcNum);
  t.explicit_margin = kExplicitExponent * lr - lc;
  return t;
}

ProofTriple proof_triple(std::uint64_t x, std::uint64_t j1, std::uint64_t j2,
                         const PrimeTable& table) {
  if (x < 2) throw InvalidArgument("block start must be >= 2");
  if (j1 == j2) throw InvalidArgument("proof triple needs j1 != j2");
  const std::uint64_t diff = j1 > j2 ? j1 - j2 : j2 - j1;
  table.require(x + std::max(j1, j2), "x + j");

  ProofTriple out{.x = x, .j1 = j1, .j2 = j2};
  out.triple = make_triple(diff, x + std::min(j1, j2), table);
  out.d = std::gcd(x + j1, diff);
  out.x_over_d = static_cast<double>(x) / static_cast<double>(out.d);
  const double log_inner = std::log(static_cast<double>(radical(x + j1, table))) +
                           std::log(static_cast<double>(radical(x + j2, table))) +
                           std::log(static_cast<double>(diff / out.d));
  out.rhs = std::exp(kExplicitExponent * log_inner);
  out.holds = std::log(out.x_over_d) <= kExplicitExponent * log_inner + kCheckTolerance;
  return out;
}

Inequality3 inequality3_rhs(std::uint64_t k, std::uint64_t a2, std::uint64_t m) {
  if (k < 2) throw InvalidArgument("k must be >= 2");
  if (a2 < 3) throw InvalidArgument("a2 must be >= 3");
  if (m < 2) throw InvalidArgument("m must be >= 2");
  const double kd = static_cast<double>(k);
  const double lk = std::log(kd);
  Inequality3 out;
  out.lhs = kd * std::log(static_cast<double>(m));
  out.rhs = kExplicitExponent * (kd * 2.0 * kThetaFactor * static_cast<double>(a2) / (kd - 1.0) +
                                 2.0 * kd * kd * lk / (kd - 1.0) + kd * lk);
  out.holds = out.lhs <= out.rhs;
  return out;
}

ProofTriple scan_block_triples(std::uint64_t x, std::uint64_t k, const PrimeTable& table) {
  if (k < 2) throw InvalidArgument("block length must be >= 2");
  table.require(x + k - 1, "block end");
  ProofTriple best;
  bool have = false;
  for (std::uint64_t j1 = 1; j1 < k; ++j1) {
    for (std::uint64_t j2 = 0; j2 < j1; ++j2) {
      ProofTriple t = proof_triple(x, j1, j2, table);
      if (!have || t.triple.quality > best.triple.quality) {
        best = t;
        have = true;
      }
    }
  }
  return best;
}

ProofTripleScan scan_proof_triples(std::uint64_t x_lo, std::uint64_t x_hi, std::uint64_t k,
                                   const PrimeTable& table, unsigned threads) {
  if (x_lo < 2 || x_hi < x_lo) throw InvalidArgument("x range must satisfy 2 <= x_lo <= x_hi");
  if (k < 2) throw InvalidArgument("block length must be >= 2");
  table.require(x_hi + k - 1, "block end");

  constexpr std::uint64_t kChunk = 512;
  const std::uint64_t chunks = (x_hi - x_lo) / kChunk + 1;
  std::vector<ProofTripleScan> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    ProofTripleScan& s = partial[c];
    const std::uint64_t lo = x_lo + c * kChunk;
    const std::uint64_t hi = std::min(x_hi, lo + kChunk - 1);
    bool have = false;
    for (std::uint64_t x = lo; x <= hi; ++x) {
      for (std::uint64_t j1 = 1; j1 < k; ++j1) {
        for (std::uint64_t j2 = 0; j2 < j1; ++j2) {
          ProofTriple t = proof_triple(x, j1, j2, table);
          ++s.triples;
          if (!t.triple.explicit_ok) s.explicit_violations.push_back(t);
          if (!have || t.triple.quality > s.best.triple.quality) {
            s.best = t;
            have = true;
          }
        }
      }
    }
  });

  ProofTripleScan out{.x_lo = x_lo, .x_hi = x_hi, .k = k};
  bool have = false;
  for (const auto& s : partial) {
    out.triples += s.triples;
    out.explicit_violations.insert(out.explicit_violations.end(), s.explicit_violations.begin(),
                                   s.explicit_violations.end());
    if (!have || s.best.triple.quality > out.best.triple.quality) {
      out.best = s.best;
      have = true;
    }
  }
  return out;
}

}  // namespace dfl

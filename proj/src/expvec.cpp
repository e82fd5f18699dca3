#include "dfl/expvec.hpp"

#include <algorithm>

#include "dfl/errors.hpp"

namespace dfl {

ExpVec ExpVec::from(const Factorization& f) {
  ExpVec v;
  v.entries_.reserve(f.entries().size());
  for (const auto& [p, e] : f.entries()) v.entries_.push_back({p, e});
  return v;
}

ExpVec ExpVec::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.prime < b.prime; });
  ExpVec v;
  for (const auto& e : entries) {
    if (e.exponent == 0) continue;
    if (!v.entries_.empty() && v.entries_.back().prime == e.prime)
      v.entries_.back().exponent += e.exponent;
    else
      v.entries_.push_back(e);
  }
  return v;
}

std::uint64_t ExpVec::exponent_of(std::uint64_t p) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const Entry& e, std::uint64_t q) { return e.prime < q; });
  return it != entries_.end() && it->prime == p ? it->exponent : 0;
}

ExpVec& ExpVec::operator*=(const ExpVec& rhs) {
  std::vector<Entry> out;
  out.reserve(entries_.size() + rhs.entries_.size());
  auto i = entries_.begin();
  auto j = rhs.entries_.begin();
  while (i != entries_.end() || j != rhs.entries_.end()) {
    if (j == rhs.entries_.end() || (i != entries_.end() && i->prime < j->prime)) {
      out.push_back(*i++);
    } else if (i == entries_.end() || j->prime < i->prime) {
      out.push_back(*j++);
    } else {
      out.push_back({i->prime, i->exponent + j->exponent});
      ++i;
      ++j;
    }
  }
  entries_ = std::move(out);
  return *this;
}

ExpVec& ExpVec::operator/=(const ExpVec& rhs) {
  if (!rhs.divides(*this)) throw InvalidArgument("ExpVec division is not exact");
  std::vector<Entry> out;
  out.reserve(entries_.size());
  auto j = rhs.entries_.begin();
  for (const auto& e : entries_) {
    std::uint64_t sub = 0;
    if (j != rhs.entries_.end() && j->prime == e.prime) sub = (j++)->exponent;
    if (e.exponent > sub) out.push_back({e.prime, e.exponent - sub});
  }
  entries_ = std::move(out);
  return *this;
}

bool ExpVec::divides(const ExpVec& other) const {
  auto j = other.entries_.begin();
  for (const auto& e : entries_) {
    while (j != other.entries_.end() && j->prime < e.prime) ++j;
    if (j == other.entries_.end() || j->prime != e.prime || j->exponent < e.exponent) return false;
  }
  return true;
}

BigInt ExpVec::value() const {
  BigInt v = 1;
  for (const auto& [p, e] : entries_)
    v *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e));
  return v;
}

namespace {

std::uint64_t legendre(std::uint64_t m, std::uint64_t p) {
  std::uint64_t total = 0;
  while (m >= p) {
    m /= p;
    total += m;
  }
  return total;
}

}  // namespace

std::uint64_t double_factorial_valuation(std::uint64_t m, std::uint64_t p) {
  if (m < 2) return 0;
  if (m % 2 == 0) {
    const std::uint64_t l = m / 2;
    return p == 2 ? l + legendre(l, 2) : legendre(l, p);
  }
  if (p == 2) return 0;
  const std::uint64_t l = (m + 1) / 2;
  return legendre(2 * l, p) - legendre(l, p);
}

ExpVec double_factorial_expvec(std::uint64_t m, const PrimeTable& table) {
  table.require(m, "m");
  std::vector<ExpVec::Entry> entries;
  for (std::uint64_t p : table.primes()) {
    if (p > m) break;
    entries.push_back({p, double_factorial_valuation(m, p)});
  }
  return ExpVec::from_entries(std::move(entries));
}

ExpVec factorial_expvec(std::uint64_t m, const PrimeTable& table) {
  table.require(m, "m");
  std::vector<ExpVec::Entry> entries;
  for (std::uint64_t p : table.primes()) {
    if (p > m) break;
    entries.push_back({p, legendre(m, p)});
  }
  return ExpVec::from_entries(std::move(entries));
}

}  // namespace dfl

#include "dfl/prime_sums.hpp"

#include <cmath>
#include <string>

#include "dfl/errors.hpp"

namespace dfl {

namespace {

template <typename Term>
double sum_primes_upto(double nu, const PrimeTable& table, Term term) {
  if (!(nu > 1.0)) throw InvalidArgument("nu must exceed 1");
  if (nu > static_cast<double>(table.limit()))
    throw OutOfRange("nu = " + std::to_string(nu) + " exceeds sieve limit");
  double s = 0.0;
  for (std::uint64_t p : table.primes()) {
    if (static_cast<double>(p) > nu) break;
    s += term(static_cast<double>(p));
  }
  return s;
}

}  // namespace

double theta(double nu, const PrimeTable& table) {
  return sum_primes_upto(nu, table, [](double p) { return std::log(p); });
}

double mertens_log_sum(double nu, const PrimeTable& table) {
  return sum_primes_upto(nu, table, [](double p) { return std::log(p) / p; });
}

}  // namespace dfl

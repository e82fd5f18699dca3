#pragma once

#include "dfl/prime_table.hpp"

namespace dfl {

// Chebyshev theta: sum of ln p over primes p <= nu. Requires 1 < nu <= limit.
double theta(double nu, const PrimeTable& table);

// Sum of ln(p)/p over primes p <= nu. Requires 1 < nu <= limit.
double mertens_log_sum(double nu, const PrimeTable& table);

}  // namespace dfl

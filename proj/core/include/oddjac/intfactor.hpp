// Integer primality / factorization helpers used by the candidate-prime
// search and the local density tables.
#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oddjac::intfactor {

// Primes <= bound, ascending (simple sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// Baillie-PSW style probable-prime test (GMP); no composite is known to pass.
bool is_probable_prime(const mpz_class& n);

// Strip all factors <= bound from |n| by trial division against sieved
// primes. Appends (p, multiplicity) pairs; returns the remaining cofactor.
mpz_class trial_division(const mpz_class& n, std::uint64_t bound,
                         std::vector<std::pair<mpz_class, unsigned>>& factors);

struct FactorResult {
  std::vector<std::pair<mpz_class, unsigned>> factors;  // ascending primes
  bool complete = false;  // true iff the cofactor was fully factored
  mpz_class unfactored = 1;  // composite cofactor left when !complete
};

// Full factorization of |n| (n != 0) by trial division then Pollard-Brent
// rho with the given iteration budget per split attempt. With a generous
// budget this succeeds for all inputs whose second-largest prime factor is
// within reach; otherwise the unfactored composite cofactor is reported.
FactorResult factor(const mpz_class& n, std::uint64_t trial_bound = 100000,
                    std::uint64_t rho_budget = 1u << 26);

}  // namespace oddjac::intfactor

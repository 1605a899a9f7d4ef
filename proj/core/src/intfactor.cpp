#include "oddjac/intfactor.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace oddjac::intfactor {

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    if (i * i > bound) {
      for (std::uint64_t j = i + 1; j <= bound; ++j)
        if (!composite[j]) primes.push_back(j);
      break;
    }
  }
  return primes;
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

mpz_class trial_division(const mpz_class& n, std::uint64_t bound,
                         std::vector<std::pair<mpz_class, unsigned>>& factors) {
  mpz_class m = abs(n);
  if (m == 0) throw std::domain_error("factoring zero");
  for (std::uint64_t p : primes_up_to(bound)) {
    if (m == 1) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      factors.emplace_back(p, e);
    }
    mpz_class psq = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    if (psq > m) break;
  }
  // If the cofactor is below bound^2 it is prime (all factors <= bound removed).
  if (m > 1) {
    mpz_class b2 = mpz_class(static_cast<unsigned long>(bound)) * static_cast<unsigned long>(bound);
    if (m <= b2 || is_probable_prime(m)) {
      factors.emplace_back(m, 1);
      return 1;
    }
  }
  return m;
}

namespace {

// Pollard-Brent rho; returns a nontrivial factor of n (composite, odd,
// not a perfect power handled by caller) or 1 on budget exhaustion.
mpz_class pollard_brent(const mpz_class& n, std::uint64_t budget, unsigned long c0) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0xacce55 + c0);
  for (unsigned long c = c0;; ++c) {
    mpz_class y = rng.get_z_range(n - 1) + 1;
    mpz_class m = 128, g = 1, r = 1, q = 1, x, ys;
    std::uint64_t spent = 0;
    while (g == 1 && spent < budget) {
      x = y;
      for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
      mpz_class k = 0;
      while (k < r && g == 1) {
        ys = y;
        mpz_class rk = r - k;
        mpz_class lim = std::min(m, rk);
        for (mpz_class i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          mpz_class d = x - y;
          q = q * abs(d) % n;
        }
        spent += mpz_get_ui(lim.get_mpz_t());
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time.
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != n && g != 1) return g;
    if (spent >= budget) return 1;
  }
}

void factor_rec(const mpz_class& n, std::uint64_t budget,
                std::map<mpz_class, unsigned>& out, mpz_class& unfactored) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  // Perfect power?
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        std::map<mpz_class, unsigned> sub;
        mpz_class sub_unf = 1;
        factor_rec(root, budget, sub, sub_unf);
        if (sub_unf == 1) {
          for (auto& [p, e] : sub) out[p] += e * static_cast<unsigned>(k);
          return;
        }
        break;
      }
    }
  }
  mpz_class d = pollard_brent(n, budget, 1);
  if (d == 1) {
    unfactored *= n;
    return;
  }
  factor_rec(d, budget, out, unfactored);
  factor_rec(n / d, budget, out, unfactored);
}

}  // namespace

FactorResult factor(const mpz_class& n, std::uint64_t trial_bound, std::uint64_t rho_budget) {
  FactorResult res;
  std::vector<std::pair<mpz_class, unsigned>> small;
  mpz_class cof = trial_division(n, trial_bound, small);
  std::map<mpz_class, unsigned> all;
  for (auto& [p, e] : small) all[p] += e;
  mpz_class unfactored = 1;
  if (cof > 1) factor_rec(cof, rho_budget, all, unfactored);
  for (auto& [p, e] : all) res.factors.emplace_back(p, e);
  res.unfactored = unfactored;
  res.complete = (unfactored == 1);
  return res;
}

}  // namespace oddjac::intfactor

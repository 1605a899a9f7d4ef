// Density laboratory for the odd/even parity of hyperelliptic Jacobians:
// seeded Monte Carlo estimators for the deficiency densities at the real
// place and at finite primes, exact two-sided bound formulas, the product
// measure on sets of deficient places, and the global density of curves with
// odd Jacobian, computed both from the local product formula and directly.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "oddjac/global.hpp"
#include "oddjac/locsolve.hpp"

namespace oddjac::density {

using Limb = locsolve::Limb;

// One seeded Bernoulli estimate. Samples whose outcome could not be decided
// (local precision exhausted, or a point search failure in direct global
// sampling) are excluded from the frequency and counted in n_undecided; the
// estimate is flagged when their fraction exceeds the configured tolerance.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // sqrt(v(1-v)/n) over the decided samples
  std::uint64_t n_samples = 0;
  std::uint64_t n_undecided = 0;
  std::uint64_t seed = 0;
  std::string config;  // echo of the estimator and its parameters
  bool flagged = false;
};

// Exact two-sided bound for a local density.
struct BoundPair {
  mpq_class lower, upper;
};

// Closed real interval with outward-rounded endpoints.
struct Interval {
  double lo = 0.0, hi = 0.0;
};

// A table row: a measured estimate, an exact bound pair, or both.
struct TableEntry {
  std::optional<Estimate> estimate;
  std::optional<BoundPair> bounds;
};

// Local deficiency densities of genus-g curves at the real place and at the
// finite primes up to prime_bound. Primes beyond the bound are handled by
// the tail policy: the product of the general upper bounds.
struct LocalDensityTable {
  int genus = 2;
  Estimate s_inf;
  std::map<Limb, TableEntry> s_p;
  Limb prime_bound = 0;
  std::string tail_policy = "product of general upper bounds beyond prime_bound";
};

// Controls for the p-adic sampler.
struct SamplingPolicy {
  int initial_precision = 0;          // 0: choose from p (24 when p = 2, else 6)
  int precision_cap = 96;             // digits; a sample undecided here is counted
  double undecided_tolerance = 1e-4;  // flag threshold for n_undecided / n
  bool dedupe_extensions = true;      // search one extension per isomorphism class
};

// Density of genus-g curves y^2 = f(x) with no real point (f negative
// definite), over coefficient vectors drawn uniformly from [-1,1]^{2g+3} as
// dyadic rationals with 53 fractional bits, decided by exact real-root
// counting. Odd genus returns the exact value 0 without sampling.
Estimate estimate_s_inf(int genus, std::uint64_t n, std::uint64_t seed);

// Probability that a polynomial of degree <= degree with coefficients drawn
// uniformly from [-1,1]^{degree+1} (same dyadic scheme) has no real root.
Estimate estimate_q_n(int degree, std::uint64_t n, std::uint64_t seed);

// Density of genus-g curves over Q_p that are deficient at p, over
// coefficient vectors drawn from the Haar measure on Z_p^{2g+3}. Each
// coefficient is a lazily extendable digit stream re-derivable from
// (seed, sample index), so a sample rejected at one precision (uncertified
// discriminant valuation) or returned as needing precision is retried with
// more digits of the same p-adic integer, up to policy.precision_cap.
// Odd genus returns the exact value 0 without sampling.
Estimate estimate_s_p(int genus, Limb p, std::uint64_t n, std::uint64_t seed,
                      const SamplingPolicy& policy = {});

// General two-sided bound for the deficiency density at an odd prime p in
// even genus g:
//   (1 - 1/p)(1 - 1/p^2) / (2 p^{g+1})  <=  s_{g,p}  <=  (1 + p^{-(g+2)}) / (2 p^{g+1}).
// Throws std::invalid_argument for odd genus or p = 2.
BoundPair prop17_bounds(int genus, Limb p);

// Sharper genus-2 pair at an odd prime:
//   (1/2) p^{-3} (1 - 1/p + 1/(2p^2) - 2/p^3 + 1/p^4 + 1/p^5 - 1/(2p^6))
//     <= s_{2,p} <=
//   (1/2) p^{-3} (1 - 1/p + 1/p^2 + 3/p^4 - 1/p^5).
// Throws std::invalid_argument for p = 2.
BoundPair refined_genus2_bounds(Limb p);

// Probability that two independent uniform binary forms over F_p of formal
// degrees m and n share no common factor: (1 - 1/p)(1 - 1/p^2), independent
// of m, n >= 1. coprime_brute_force enumerates all p^{m+n+2} ordered pairs
// of coefficient vectors and counts the coprime ones exactly.
mpq_class coprime_probability(Limb p, int m, int n);
mpq_class coprime_brute_force(Limb p, int m, int n);

// Haar measure of the squares among the units of the ring of integers of
// the unramified extension of Q_2 of degree j: exactly 2^{-(j+1)} (the
// square unit classes modulo 8 are 1 in 2^{j+1}).
mpq_class unit_square_fraction(int j);

// Nonsquare-measure constant (3*2^{j-2} + 1)/(2^j + 1) = 3/4 + (1/4)/(2^j+1):
// the valuation-shell series for the measure of nonsquares in the ring of
// integers of the degree-j unramified extension of Q_2, evaluated with the
// base-field unit nonsquare fraction 3/4 at every j. It is the exact measure
// for j = 1 (5/6) and is the constant conventionally combined as
// eta(1)^3 * eta(3) = 875/1944 in the genus-2 bound for s_{g,2}; for j >= 2
// it undershoots the true measure, which eta_exact supplies.
mpq_class eta(int j);

// Exact Haar measure of the nonsquares in the ring of integers of the
// degree-j unramified extension of Q_2: summing the valuation shells with
// the true unit-square fraction 2^{-(j+1)} gives
//   1 - 1/(2 (2^j + 1)) = (2^{j+1} + 1)/(2^{j+1} + 2).
mpq_class eta_exact(int j);

// Measure s_inf and s_2 with the given sample counts and fill every odd
// prime <= prime_bound with the exact bound pair (the genus-2 refinement
// intersected with the general pair when applicable).
LocalDensityTable measure_table(int genus, Limb prime_bound, std::uint64_t n_inf,
                                std::uint64_t n_two, std::uint64_t seed,
                                const SamplingPolicy& policy = {});

// Check every finite-prime entry against its exact bounds (estimates within
// three standard errors, exact entries by containment; p = 2 against
// [0, eta(1)^3 * eta(3)]). On failure writes a description to *offender.
bool validate_table(const LocalDensityTable& table, std::string* offender = nullptr);

// Interval for one table entry: an exact bound pair as-is, an estimate as
// value +- 3 std_error clamped to [0,1], their intersection when both exist.
Interval entry_interval(const TableEntry& entry);

// Interval for the measure of {curves whose deficient-place set is exactly S}
// under the product measure: prod_{v in S} s_v * prod_{v not in S} (1 - s_v),
// with the tail over primes beyond the table handled by the bound
// prod_{p > P} (1 - s_p) >= 1 - sum_{p > P} upper_p. Places are named "inf"
// or by the prime. Throws std::invalid_argument when S contains a place the
// table does not cover.
Interval nu_of_set(const std::set<std::string>& places, const LocalDensityTable& table);

// Interval for the density rho_g of curves with odd Jacobian from the local
// product formula 1 - 2 rho_g = prod_v (1 - 2 s_{g,v}): the truncated product
// over the table entries with v <= prime_bound times the outward-rounded tail
// factor in [1 - 2 sum_{p > P} upper_p, 1]. Odd genus returns exactly [0, 0].
Interval rho_interval(int genus, const LocalDensityTable& table, Limb prime_bound);

// Direct global sample: parity verdicts of curves with integer coefficients.
struct RhoDirect {
  Estimate est;  // fraction of decided samples with odd parity
  // Deficient-place set -> count over decided samples ("inf" first, then
  // finite places in ascending order, as reported by the parity scan).
  std::map<std::vector<std::string>, std::uint64_t> histogram;
  std::uint64_t n_singular = 0;   // discarded draws with vanishing discriminant
  std::uint64_t n_heuristic = 0;  // decided samples whose candidate scan
                                  // disclosed an unfactored cofactor
};

// Factorization options suited to bulk sampling: heuristic mode with trial
// bound 10^4 and deduplicated extension search.
global::GlobalOptions default_rho_options();

// Sample n coefficient vectors uniformly from [-height, height]^{2g+3},
// discard singular draws, and run the global parity scan on each. Samples
// with a genuinely undecided place are excluded and counted in n_undecided;
// samples decided under a disclosed unfactored cofactor (heuristic mode)
// count normally and are tallied in n_heuristic.
RhoDirect estimate_rho_direct(int genus, const mpz_class& height, std::uint64_t n,
                              std::uint64_t seed,
                              const global::GlobalOptions& options = default_rho_options());

}  // namespace oddjac::density

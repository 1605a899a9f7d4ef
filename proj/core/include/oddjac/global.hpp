// Whole-curve analysis over Q: the finite candidate-place scan, the set of
// deficient places, and the parity verdict it determines.
//
// For a nonsingular curve y^2 = f(x) of even genus g, deficiency can only
// occur at the real place, at 2, and at odd primes p with p^{g+1} dividing
// the discriminant, so the whole-curve question reduces to finitely many
// local decisions. The count N of deficient places determines the canonical
// self-pairing value N/2 in Q/Z and with it the parity of the
// Shafarevich-Tate group of the Jacobian: odd if and only if N is odd.
#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "oddjac/locsolve.hpp"

namespace oddjac::global {

using Limb = locsolve::Limb;

enum class FactorMode { Rigorous, Heuristic };

// Outcome of the candidate-prime scan of the discriminant.
struct CandidateScan {
  // Finite primes to examine: 2, plus every odd p with p^{g+1} | disc.
  // Sorted ascending; empty for odd genus (never deficient anywhere).
  std::vector<Limb> primes;
  // True when the list above provably contains every candidate. False when a
  // cofactor of the discriminant resisted factorization (or a candidate does
  // not fit a machine word); the uncertified part is disclosed below.
  bool complete = true;
  mpz_class unfactored = 1;
  FactorMode mode = FactorMode::Rigorous;
};

struct GlobalOptions {
  FactorMode factor_mode = FactorMode::Rigorous;
  // Heuristic mode: trial-division bound B. A leftover cofactor C is still
  // certified candidate-free when C < B^{g+1} or C is prime (g >= 2).
  mpz_class trial_bound = 1000000;
  locsolve::SearchOptions search;
};

// {2} union {odd p : p^{g+1} | disc}, with completeness certification.
// Requires a global-mode curve; odd genus yields an empty complete scan.
CandidateScan candidate_primes(const locsolve::Curve& c, FactorMode mode,
                               const mpz_class& trial_bound = mpz_class(1000000));

// Every evaluated place with its verdict, partitioned for the caller.
struct PlaceScan {
  std::vector<locsolve::DeficiencyVerdict> verdicts;  // inf, 2, odd candidates
  std::vector<std::string> deficient_places;
  std::vector<std::string> undecided_places;
  CandidateScan scan;
};

PlaceScan deficient_places(const locsolve::Curve& c, const GlobalOptions& opt = {});

enum class Parity { Even, Odd };

struct ParityReport {
  int genus = 0;
  std::vector<mpz_class> coefficients;
  std::vector<locsolve::DeficiencyVerdict> place_verdicts;
  std::vector<std::string> deficient_places;
  std::vector<std::string> undecided_places;
  int N = 0;                 // number of deficient places
  mpq_class pairing_value;   // <c,c> = (N mod 2)/2 as an element of Q/Z
  Parity verdict = Parity::Even;  // Odd iff N odd (meaningful when decided)
  // False when any place is Undecided or the candidate scan is incomplete;
  // the verdict then covers only the certified places.
  bool decided = true;
  FactorMode factorization_mode = FactorMode::Rigorous;
  bool scan_complete = true;
  mpz_class unfactored = 1;
  std::string note;  // informational consequence of an Odd verdict
};

// Full parity analysis: candidate scan, all local verdicts, N, and the
// pairing value. Odd genus short-circuits to Even with N = 0.
ParityReport parity(const locsolve::Curve& c, const GlobalOptions& opt = {});

// Conic sanity sweep: for genus-0 curves the number of deficient places is
// always even (a product-formula fact), which exercises every local decision
// path at once. Returns false and describes the first offender if any sample
// violates that, or if a sample cannot be fully decided.
bool genus0_parity_audit(const std::vector<locsolve::Curve>& conics,
                         std::string* offender = nullptr);

const char* to_string(Parity p);
const char* to_string(FactorMode m);

}  // namespace oddjac::global

#include "oddjac/global.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "oddjac/intfactor.hpp"

namespace oddjac::global {

namespace {

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

const char* to_string(Parity p) { return p == Parity::Odd ? "Odd" : "Even"; }

const char* to_string(FactorMode m) {
  return m == FactorMode::Rigorous ? "rigorous" : "heuristic";
}

CandidateScan candidate_primes(const locsolve::Curve& c, FactorMode mode,
                               const mpz_class& trial_bound) {
  if (c.local_mode)
    throw std::invalid_argument("candidate_primes: global-mode curves only");
  CandidateScan out;
  out.mode = mode;
  if (c.genus % 2 != 0) return out;  // odd genus: no place is ever deficient

  const unsigned need = static_cast<unsigned>(c.genus) + 1;
  const mpz_class disc = abs(locsolve::discriminant(c));

  std::vector<std::pair<mpz_class, unsigned>> factors;
  mpz_class cofactor = 1;
  mpz_class hidden_floor;  // primes hidden in the cofactor all exceed this
  if (mode == FactorMode::Rigorous) {
    auto fr = intfactor::factor(disc);
    factors = std::move(fr.factors);
    if (!fr.complete) cofactor = fr.unfactored;
    hidden_floor = 100000;  // factor()'s trial-division reach
  } else {
    if (trial_bound < 2 || !mpz_fits_ulong_p(trial_bound.get_mpz_t()))
      throw std::invalid_argument("candidate_primes: unusable trial-division bound");
    cofactor = intfactor::trial_division(disc, mpz_get_ui(trial_bound.get_mpz_t()), factors);
    hidden_floor = trial_bound;
  }

  out.primes.push_back(2);
  for (const auto& [p, mult] : factors) {
    if (p == 2 || mult < need) continue;
    if (mpz_fits_ulong_p(p.get_mpz_t())) {
      out.primes.push_back(mpz_get_ui(p.get_mpz_t()));
    } else {
      // A genuine candidate beyond the local decider's word size: disclose
      // instead of silently dropping the place.
      out.complete = false;
      out.unfactored *= pow_mpz(p, mult);
    }
  }

  if (cofactor > 1) {
    // Every prime factor of the cofactor exceeds hidden_floor.
    bool certified = false;
    if (intfactor::is_probable_prime(cofactor)) {
      if (need >= 2) {
        certified = true;  // multiplicity 1 < g+1: not a candidate
      } else if (mpz_fits_ulong_p(cofactor.get_mpz_t())) {
        out.primes.push_back(mpz_get_ui(cofactor.get_mpz_t()));  // genus 0
        certified = true;
      }
    } else if (cofactor < pow_mpz(hidden_floor, need)) {
      certified = true;  // too small to contain a (g+1)-th prime power
    }
    if (!certified) {
      out.complete = false;
      out.unfactored *= cofactor;
    }
  }

  std::sort(out.primes.begin(), out.primes.end());
  out.primes.erase(std::unique(out.primes.begin(), out.primes.end()), out.primes.end());
  return out;
}

PlaceScan deficient_places(const locsolve::Curve& c, const GlobalOptions& opt) {
  if (c.local_mode)
    throw std::invalid_argument("deficient_places: global-mode curves only");
  PlaceScan out;
  out.scan = candidate_primes(c, opt.factor_mode, opt.trial_bound);
  out.verdicts.push_back(locsolve::deficient_at_infinity(c));
  out.verdicts.push_back(locsolve::deficient_at_finite(c, 2, opt.search));
  for (Limb p : out.scan.primes)
    if (p != 2) out.verdicts.push_back(locsolve::deficient_at_finite(c, p, opt.search));
  for (const auto& v : out.verdicts) {
    if (v.decision == locsolve::Decision::Deficient)
      out.deficient_places.push_back(v.place);
    else if (v.decision == locsolve::Decision::Undecided)
      out.undecided_places.push_back(v.place);
  }
  return out;
}

ParityReport parity(const locsolve::Curve& c, const GlobalOptions& opt) {
  PlaceScan ps = deficient_places(c, opt);
  ParityReport r;
  r.genus = c.genus;
  r.coefficients = c.a;
  r.place_verdicts = std::move(ps.verdicts);
  r.deficient_places = std::move(ps.deficient_places);
  r.undecided_places = std::move(ps.undecided_places);
  r.N = static_cast<int>(r.deficient_places.size());
  r.pairing_value = mpq_class(r.N % 2, 2);
  r.pairing_value.canonicalize();
  r.verdict = (r.N % 2 != 0) ? Parity::Odd : Parity::Even;
  r.factorization_mode = ps.scan.mode;
  r.scan_complete = ps.scan.complete;
  r.unfactored = ps.scan.unfactored;
  r.decided = r.undecided_places.empty() && r.scan_complete;
  if (c.genus % 2 != 0)
    r.note =
        "odd genus: a rational divisor class of degree g-1 exists at every "
        "place, so no place is deficient";
  else if (r.verdict == Parity::Odd && r.decided)
    r.note =
        "if the Shafarevich-Tate group of the Jacobian is finite, its order "
        "is twice a perfect square";
  return r;
}

bool genus0_parity_audit(const std::vector<locsolve::Curve>& conics, std::string* offender) {
  for (const locsolve::Curve& c : conics) {
    if (c.genus != 0)
      throw std::invalid_argument("genus0_parity_audit: genus-0 curves only");
    ParityReport r = parity(c);
    if (r.decided && r.N % 2 == 0) continue;
    if (offender) {
      std::string s = "coefficients";
      for (const auto& a : c.a) s += " " + a.get_str();
      s += r.decided ? "; odd deficiency count N=" + std::to_string(r.N)
                     : "; undecided places present";
      *offender = s;
    }
    return false;
  }
  return true;
}

}  // namespace oddjac::global

// Local solvability and deficiency decisions for hyperelliptic curves
// y^2 = f(x) over Q and over p-adic fields.
//
// A place v of Q is *deficient* for the smooth projective model X of
// y^2 = f(x) (f of formal degree 2g+2, nonzero discriminant) when X has no
// point over any extension of Q_v of odd degree <= g+1 (for v = infinity:
// no real point). Odd-genus curves are never deficient. The routines here
// decide deficiency exactly: fast certificates where available, otherwise a
// certified point search over every relevant local field.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "oddjac/qp.hpp"

namespace oddjac::locsolve {

using Limb = qp::Limb;

// Hyperelliptic model y^2 = f(x) with f(x) = sum_{i=0}^{2g+2} a[i] x^i viewed
// as a binary form F(x,z) of formal degree n = 2g+2 (the leading coefficients
// may vanish; the discriminant of F must not).
//
// Two coefficient modes:
//  - global: the a[i] are exact integers;
//  - local-sampling: the a[i] are p-adic integers known only modulo
//    locp^locprec (shared precision), used by the density estimators.
struct Curve {
  int genus = 0;
  std::vector<mpz_class> a;  // size 2*genus + 3, constant term first
  bool local_mode = false;
  Limb locp = 0;
  int locprec = 0;

  int n() const { return 2 * genus + 2; }

  // Lazily cached discriminant (global mode only; not thread-safe).
  mutable std::optional<mpz_class> disc_;
};

// Global-mode constructor; throws std::invalid_argument if the coefficient
// count is wrong or the discriminant vanishes.
Curve make_curve(int genus, std::vector<mpz_class> coeffs);

// Local-sampling constructor: coefficients are reduced mod p^prec. Returns
// nullopt when the discriminant's p-valuation cannot be certified at this
// precision (in particular when the truncated discriminant is 0 mod p^prec);
// such samples must be rejected or re-drawn at higher precision.
std::optional<Curve> try_make_local_curve(int genus, std::vector<mpz_class> coeffs, Limb p,
                                          int prec);

// Discriminant of the binary form F(x,z) = sum a_i x^i z^{n-i}, normalized so
// that Disc(a x^2 + b x z + c z^2) = b^2 - 4ac: Disc = (-1)^{n(n-1)/2}
// Res(F_x, F_z) / n^{n-2}. Global mode only; cached on the curve.
const mpz_class& discriminant(const Curve& c);

// p-valuation of the discriminant. Global mode: always a value (Disc != 0).
// Local mode: the truncated discriminant agrees with the true one modulo
// p^locprec, so its valuation is certified only when small enough; returns
// nullopt otherwise.
std::optional<long> disc_valuation(const Curve& c, Limb p);

enum class PointAnswer { Yes, No, NeedsPrecision };

// A certified local point. chart 1: y^2 = f(x) with x = coord integral.
// chart 2: y^2 = f*(u) with u = coord in the maximal ideal, where
// f*(u) = u^{2g+2} f(1/u) has the reversed coefficients (u = 0 is the pair of
// points at infinity, present when the leading coefficient is a square).
struct PointWitness {
  qp::LocalField field;
  int chart = 1;
  qp::LocalField::Element coord;
  qp::LocalField::Element y;
};

struct PointSearchResult {
  PointAnswer answer = PointAnswer::NeedsPrecision;
  std::optional<PointWitness> witness;  // set when answer == Yes
};

// Does X have an L-point? Complete two-chart search by residue-disc
// refinement with certified decisions only:
//  - a disc is accepted when the value at its center is a certified square
//    and the tail cannot change squareness (unit-square stability), or when a
//    Newton step certifies a root of f (a point with y = 0);
//  - a disc is rejected only when every residue class is refuted;
//  - reaching the refinement depth bound (derived from v_L(Disc)) raises the
//    working precision and retries in global mode, and returns NeedsPrecision
//    in local-sampling mode. No answer is ever guessed.
// Yes answers carry a witness that has been re-verified against f.
PointSearchResult has_point_over(const Curve& c, const qp::LocalField& L,
                                 int precision_cap = 1 << 14);

// Deficiency certificate at an odd prime p for even-genus curves: an exact
// decomposition f = u h^2 + p j over Z with u a nonsquare unit mod p such
// that hbar and jbar, as binary forms of formal degrees g+1 and 2g+2 over
// F_p, share no irreducible factor of odd degree. When such a decomposition
// exists the curve has no point over any odd-degree extension of Q_p, so p
// is deficient.
struct ModPCertificate {
  Limb p = 0;
  mpz_class u;
  std::vector<mpz_class> h;  // constant term first; h mod p is the square part
  std::vector<mpz_class> j;  // j = (f - u h^2)/p exactly
};
std::optional<ModPCertificate> mod_p_deficiency_certificate(const Curve& c, Limb p);

enum class Decision { Deficient, NotDeficient, Undecided };

// Why a verdict holds; each value names the certifying mechanism.
enum class Why {
  OddGenusPencil,         // odd genus: never deficient
  IntegerSquareConstant,  // a_0 is a square in Z: rational point (0, sqrt(a_0))
  ResidueScreen,          // mod-p factorization shape forces unramified points
  DiscValuationBound,     // p^{g+1} does not divide Disc (p odd)
  CertifiedDecomposition, // f = u h^2 + p j certificate
  PointFound,             // explicit point over an odd-degree extension
  ExtensionExhaustion,    // every odd-degree extension refuted by search
  NegativeDefinite,       // f < 0 on all of R: no real point
  RealPoint,              // f takes a nonnegative real value
  PrecisionWall           // local-sampling precision exhausted
};

struct DeficiencyVerdict {
  std::string place;  // "inf" or the prime
  Decision decision = Decision::Undecided;
  Why why = Why::PrecisionWall;
  std::optional<PointWitness> witness;          // NotDeficient via a point
  std::optional<ModPCertificate> certificate;   // Deficient via decomposition
  std::vector<std::string> searched_fields;     // exhaustion log
  std::string detail;                           // human-readable summary
};

struct SearchOptions {
  // Use the fast paths (residue screen, discriminant valuation bound,
  // certified decomposition) before the exhaustive extension search. The
  // exhaustive search alone is already a complete decision procedure.
  bool use_screens = true;
  // Search each isomorphism class of extensions once instead of every
  // enumerated defining polynomial. Off by default: redundant search depends
  // on less machinery (no cross-field root finding).
  bool dedupe_extensions = false;
  // Working-precision cap for global-mode point searches.
  int precision_cap = 1 << 14;
};

// Deficiency of the finite place p. Decision chain for even genus:
// rational-point shortcut, residue screen (p odd), discriminant valuation
// bound (p odd), certified decomposition (p odd), then the exhaustive point
// search over every extension of Q_p of odd degree <= g+1.
DeficiencyVerdict deficient_at_finite(const Curve& c, Limb p, const SearchOptions& opt = {});

// Deficiency of the real place: an even-genus curve is deficient at infinity
// iff f is negative definite on R. Global mode only.
DeficiencyVerdict deficient_at_infinity(const Curve& c);

}  // namespace oddjac::locsolve

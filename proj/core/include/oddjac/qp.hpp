// Finite extensions of Q_p presented as two-step towers: an unramified part
// with residue field F_{p^f} (generated by a lift omega of the residue field
// generator) and a totally ramified part cut out by an Eisenstein polynomial
// in the uniformizer pi.
//
// Integral elements are coordinate vectors over the O_{Q_p}-basis
// {pi^i omega^j : 0 <= i < e, 0 <= j < f} with absolute pi-adic precision
// tracked through every operation: an element of precision N is known
// modulo pi^N O_L, i.e. coordinate (i,j) is canonical modulo
// p^(ceil((N-i)/e)). Valuations computed from canonical coordinates are
// exact whenever they are below the precision.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "oddjac/fq.hpp"

namespace oddjac::qp {

using Limb = fq::Limb;

// Valuation bounded by precision: if finite, v is the exact (pi-adic)
// valuation; otherwise the element is indistinguishable from 0 at its
// precision and v holds that precision (a lower bound for the valuation).
struct Val {
  bool finite;
  long v;
};

enum class SquareVerdict { Yes, No, NeedsPrecision };

// Raised by root searches that hit their depth bound without a decision.
struct DepthExhausted : std::logic_error {
  using std::logic_error::logic_error;
};

class LocalField {
 public:
  struct Element {
    std::vector<mpz_class> coords;  // size e*f, index i*f + j
    int precision = 0;              // absolute pi-adic precision
  };

  // Q_p at the given p-adic working precision.
  static LocalField qp(Limb p, int precision);
  // Unramified extension of Q_p of degree f.
  static LocalField unramified(Limb p, unsigned f, int precision);
  // Totally ramified extension of the degree-f unramified field by the
  // Eisenstein polynomial E(x) = x^e + p*(b[e-1] x^{e-1} + ... + b[0]),
  // where each b[i] is an integral element of the unramified subfield given
  // as a polynomial in omega (length-f little-endian integer vector) and
  // b[0] must be a unit.
  static LocalField eisenstein(Limb p, unsigned f, unsigned e,
                               std::vector<std::vector<mpz_class>> b, int precision);

  Limb p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned f() const { return f_; }
  unsigned degree() const { return e_ * f_; }
  int precision() const { return prec_; }
  long val_of_2() const { return p_ == 2 ? static_cast<long>(e_) : 0; }
  const fq::Field& residue_field() const { return kappa_; }
  const std::vector<std::vector<mpz_class>>& eisenstein_b() const { return eis_b_; }

  // Same field data at a different working precision.
  LocalField with_precision(int precision) const;

  std::string describe() const;

  // ----- element constructors -----
  Element zero() const { return zero(prec_); }
  Element zero(int precision) const;
  Element one() const { return from_mpz(1); }
  Element from_mpz(const mpz_class& v) const { return from_mpz(v, prec_); }
  Element from_mpz(const mpz_class& v, int precision) const;
  // num/den with den a p-adic unit (den not divisible by p).
  Element from_mpq(const mpq_class& v) const;
  Element pi() const;     // uniformizer (p itself when e == 1)
  Element omega() const;  // unramified generator (1 when f == 1)
  // Integral lift of a residue-field element (digit 0 of the pi expansion).
  Element lift(const fq::Elem& r) const { return lift(r, prec_); }
  Element lift(const fq::Elem& r, int precision) const;

  // ----- arithmetic (precision tracked) -----
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element mul_mpz(const mpz_class& c, const Element& a) const;
  Element pow(Element base, mpz_class n) const;  // n >= 0

  // Multiply by pi^k (k may be negative; division requires valuation >= -k,
  // else domain_error; lowers precision by -k).
  Element shift(const Element& a, long k) const;
  // Inverse of a unit (valuation 0 certified at a's precision).
  Element invert_unit(const Element& a) const;

  // ----- structure -----
  Val valuation(const Element& a) const;
  bool is_zero_at_precision(const Element& a) const;
  // a and b agree at the coarser of the two precisions.
  bool equal_at_precision(const Element& a, const Element& b) const;
  // Residue a mod pi in F_{p^f}; requires precision >= 1 (a integral by
  // construction).
  fq::Elem residue(const Element& a) const;
  // Integral lifts of all p^f residue classes, canonical order.
  std::vector<Element> residue_reps() const;
  // pi-adic digit expansion: a = sum_k lift(digit[k]) pi^k + O(pi^precision).
  std::vector<fq::Elem> digits(const Element& a) const;
  std::string to_string(const Element& a) const;

  // ----- squares and roots -----
  struct SquareResult {
    SquareVerdict verdict;
    int needed_precision = 0;        // set when verdict == NeedsPrecision
    std::optional<Element> sqrt;     // set when verdict == Yes
  };
  // Is a a square in L? Decides exactly from canonical data whenever the
  // precision of a exceeds val(a) + 2*val_of_2(), else reports the precision
  // that would suffice.
  SquareResult is_square(const Element& a) const;

  // ----- polynomials over L -----
  using Poly = std::vector<Element>;  // constant term first, no normalization
  Element eval(const Poly& g, const Element& x) const;
  Poly derivative(const Poly& g) const;
  Poly poly_from_mpz(const std::vector<mpz_class>& coeffs) const;

  // Newton refinement from an approximation a with
  // val(g(a)) > 2*val(g'(a)) (the valuation of g'(a) must be finite).
  // Returns the root to (roughly) the working precision, or nullopt when the
  // starting condition fails.
  std::optional<Element> hensel_root(const Poly& g, const Element& a) const;

  // Does the monic integral polynomial g have a root in L? Exhaustive
  // digit-by-digit search with Newton acceptance and valuation pruning,
  // terminated by a depth bound. max_depth == 0 picks a bound from the
  // working precision. Throws DepthExhausted when the bound is reached
  // without a decision (callers with a sound discriminant-derived bound
  // never see it; callers probing cheaply can escalate).
  bool has_root(const Poly& g, int max_depth = 0) const;

 private:
  LocalField(Limb p, unsigned f, unsigned e, std::vector<std::vector<mpz_class>> b,
             int precision);

  // omega-polynomial helpers (length-f integer vectors, reduced mod the
  // lifted defining polynomial of the residue field).
  std::vector<mpz_class> umul(const std::vector<mpz_class>& a,
                              const std::vector<mpz_class>& b) const;

  void canonicalize(Element& a) const;
  int coeff_precision(int precision, unsigned row) const;  // ceil((N-i)/e)
  const mpz_class& ppow(int k) const;  // p^k, cached (fields are not
                                       // thread-safe across const calls)

  Limb p_;
  unsigned f_;
  unsigned e_;
  int prec_;
  fq::Field kappa_;
  std::vector<Limb> kappa_def_;                 // lifted defining polynomial
  std::vector<std::vector<mpz_class>> eis_b_;   // e entries of length f (e >= 2)
  Element b_inv_;  // inverse of B = sum b[s] pi^s (pi^e = -p*B); e >= 2 only
  mutable std::vector<mpz_class> ppow_;  // cached powers of p
};

// All extensions L/Q_p of odd degree <= max_degree (including Q_p itself),
// via: unramified fields, tame Eisenstein polynomials x^e - p*r with r
// running over cosets of (kappa*)^gcd(e, q-1), and -- when p divides e -- the
// full Krasner-saturated family of truncated Eisenstein polynomials. The
// list may contain isomorphic duplicates (it is a covering family).
std::vector<LocalField> enumerate_odd_extensions(Limb p, unsigned max_degree, int precision);

// The same list with isomorphic duplicates removed (pairwise defining-
// polynomial root tests); one representative per isomorphism class.
std::vector<LocalField> distinct_odd_extensions(Limb p, unsigned max_degree, int precision);

// Cached variant of distinct_odd_extensions (rebuilt if a higher precision
// is requested).
const std::vector<LocalField>& distinct_odd_extensions_cached(Limb p, unsigned max_degree,
                                                              int precision);

}  // namespace oddjac::qp

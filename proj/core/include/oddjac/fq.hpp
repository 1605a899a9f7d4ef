// Arithmetic in finite fields F_{p^m} and dense univariate polynomials over them.
//
// The only factorization primitives are squarefree decomposition and
// distinct-degree splitting; they are all the structure the deficiency
// screens need.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oddjac::fq {

using Limb = std::uint64_t;

// Element of F_{p^m}: little-endian coefficient vector of length m over F_p
// in the generator t of the defining polynomial.
using Elem = std::vector<Limb>;

class Field {
 public:
  // F_p (m = 1), or F_{p^m} defined by the first monic irreducible of degree m
  // in ascending lexicographic order on (a_{m-1}, ..., a_0).
  explicit Field(Limb p, unsigned m = 1);
  // Explicit monic defining polynomial (little-endian, length m+1, lead 1).
  Field(Limb p, std::vector<Limb> defining);

  Limb p() const { return p_; }
  unsigned degree() const { return m_; }
  const std::vector<Limb>& defining() const { return defining_; }
  mpz_class order() const;  // p^m

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const { return from_uint(1); }
  Elem from_uint(Limb v) const;
  Elem from_mpz(const mpz_class& v) const;
  Elem gen() const;  // t; requires m >= 2
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;  // a != 0
  Elem pow(Elem base, mpz_class n) const;  // n >= 0
  Elem frobenius(const Elem& a) const;     // a^p
  Elem pth_root(const Elem& a) const;      // unique b with b^p = a

  // Euler criterion (char 2: everything is a square). is_square(0) = true.
  bool is_square(const Elem& a) const;
  // A square root if one exists (deterministic Tonelli-Shanks; the nonresidue
  // is found by scanning elements in enumeration order).
  std::optional<Elem> sqrt(const Elem& a) const;

  // Mixed-radix enumeration of all p^m elements; index 0 is zero.
  Elem elem_at(const mpz_class& index) const;
  mpz_class index_of(const Elem& a) const;

  std::string to_string(const Elem& a) const;

  Limb add_p(Limb a, Limb b) const;
  Limb sub_p(Limb a, Limb b) const;
  Limb mul_p(Limb a, Limb b) const;
  Limb inv_p(Limb a) const;

 private:
  Limb p_;
  unsigned m_;
  std::vector<Limb> defining_;
};

// Dense univariate polynomial over F_{p^m}; c[i] multiplies x^i; no trailing
// zero coefficients (zero polynomial has empty c).
struct Poly {
  std::vector<Elem> c;
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

Poly poly_zero();
Poly poly_one(const Field& F);
Poly poly_x(const Field& F);
// Coefficients given as integers, constant term first.
Poly poly_from_ints(const Field& F, const std::vector<long long>& coeffs);
Poly poly_from_mpz(const Field& F, const std::vector<mpz_class>& coeffs);
void poly_normalize(const Field& F, Poly& f);
bool poly_equal(const Poly& a, const Poly& b);

const Elem& poly_lc(const Poly& f);  // f != 0
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
Poly poly_scale(const Field& F, const Elem& s, const Poly& a);
// Division with remainder; b != 0 (leading coefficient inverted internally).
std::pair<Poly, Poly> poly_divrem(const Field& F, const Poly& a, const Poly& b);
Poly poly_mod(const Field& F, const Poly& a, const Poly& b);
Poly poly_div_exact(const Field& F, const Poly& a, const Poly& b);
Poly poly_gcd(const Field& F, Poly a, Poly b);  // monic unless zero
Poly poly_derivative(const Field& F, const Poly& f);
Poly poly_monic(const Field& F, const Poly& f);
Elem poly_eval(const Field& F, const Poly& f, const Elem& x);
Poly poly_pow_mod(const Field& F, Poly base, const mpz_class& n, const Poly& mod);
std::string poly_to_string(const Field& F, const Poly& f);

// Rabin irreducibility test (x^{q^n} = x plus gcd conditions for maximal
// proper subfield degrees).
bool is_irreducible(const Field& F, const Poly& f);

// First monic irreducible of degree m over F_p in ascending lexicographic
// order on (a_{m-1}, ..., a_0); deterministic.
Poly find_irreducible(Limb p, unsigned m);

// f = lc * prod factor_i^{multiplicity_i} with the factor_i monic, squarefree
// and pairwise coprime, multiplicities distinct and ascending.
struct SquarefreePart {
  Poly factor;
  unsigned multiplicity;
};
std::vector<SquarefreePart> squarefree_decomposition(const Field& F, const Poly& f);

// f monic squarefree; returns (product of irreducible factors of degree d, d)
// for each degree d that occurs, ascending.
std::vector<std::pair<Poly, unsigned>> distinct_degree_split(const Field& F, Poly f);

// All roots of f in F (each exactly once). Splits the linear-factor part
// deterministically; intended for residue enumeration in local searches.
std::vector<Elem> poly_roots(const Field& F, const Poly& f);

// Screen on the reduction fbar of an even-formal-degree curve polynomial.
// NotDeficientCertain: fbar != 0 and fbar is not (nonsquare constant)*(square);
// the curve then has points over unramified extensions of odd degree, so the
// place is not deficient. NonsquareTimesSquare carries fbar = unit * h^2 with
// the unit a nonsquare constant and h monic (h may be constant 1).
enum class ScreenVerdict { NotDeficientCertain, ZeroReduction, NonsquareTimesSquare };
struct ScreenResult {
  ScreenVerdict verdict;
  Elem unit;  // set for NonsquareTimesSquare
  Poly h;     // set for NonsquareTimesSquare
};
ScreenResult reduction_screen(const Field& F, const Poly& fbar, unsigned formal_degree);

// Do h and j, viewed as binary forms of the given formal degrees (so with
// z-multiplicity formal_deg - deg), share a common irreducible factor of odd
// degree? Exactly one input may be zero: gcd(0, g) = g. Both zero is an error.
bool odd_degree_common_factor(const Field& F, const Poly& h, unsigned formal_deg_h,
                              const Poly& j, unsigned formal_deg_j);

}  // namespace oddjac::fq

// Finite abelian groups carrying a nondegenerate antisymmetric pairing with
// values in Q/Z, together with a distinguished element c satisfying
// <x, x> = <x, c> for all x.  This is the shape of the (nondivisible part of
// the) Shafarevich-Tate group of a principally polarized abelian variety
// under the Cassels-Tate pairing: the pairing need not be alternating, and c
// measures the failure.  The module validates such structures, reads off the
// parity <c, c> in {0, 1/2} ("Even" / "Odd"), and constructs an explicit
// decomposition certifying the square / twice-a-square order laws:
//
//   Even, c = 0:   the pairing is alternating on the whole group.
//   Even, c != 0:  there are a, b generating V ~= Z/2^n x Z/2^n with
//                  c = 2^(n-1) a, <a,a> = 0, <a,b> = 2^(-n), <b,b> = 1/2,
//                  and G = V (+) V^perp with V^perp alternating nondegenerate.
//   Odd:           G = {0, c} (+) c^perp with c^perp alternating
//                  nondegenerate.
//
// In every case the group is isomorphic to T x T (Even) or Z/2 x T x T (Odd)
// for a finite abelian group T that the decomposition reports.
//
// All pairing values are exact rationals; there is no floating point here.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oddjac::ctgroup {

// Group elements are coordinate vectors with respect to the invariant-factor
// basis: x = (x_0, ..., x_{k-1}) represents sum x_i e_i with e_i of order
// n_i.  Coordinates are kept reduced into [0, n_i) by the operations below.
using Element = std::vector<mpz_class>;

struct PairedGroup {
  // Invariant factors n_0 | n_1 | ... | n_{k-1}, each >= 2.  The empty
  // sequence is the trivial group.
  std::vector<unsigned long> invariant_factors;
  // gram[i][j] = <e_i, e_j> as an exact rational in [0, 1).  Bilinearity
  // forces the denominator to divide gcd(n_i, n_j); antisymmetry forces
  // gram[i][j] + gram[j][i] to be an integer.
  std::vector<std::vector<mpq_class>> gram;
  // Coordinates of the distinguished element c.
  Element c;

  std::size_t rank() const { return invariant_factors.size(); }
  mpz_class order() const;
  unsigned long exponent() const;  // n_{k-1}, or 1 for the trivial group

  Element zero() const { return Element(rank(), 0); }
  Element basis_element(std::size_t i) const;
  // Reduce coordinates into [0, n_i).
  Element reduce(Element x) const;
  Element add(const Element& x, const Element& y) const;
  Element scale(const mpz_class& m, const Element& x) const;
  // Smallest m >= 1 with m*x = 0 (lcm of coordinate orders).
  mpz_class element_order(const Element& x) const;

  // <x, y> reduced into [0, 1).
  mpq_class pair(const Element& x, const Element& y) const;

  bool operator==(const PairedGroup&) const = default;
};

// A failed axiom together with a witness element exhibiting the failure.
struct Violation {
  std::string axiom;   // "shape", "divisibility-chain", "entry-range",
                       // "bilinearity", "antisymmetry", "nondegeneracy",
                       // "c-compatibility", "c-order"
  std::string detail;  // human-readable account of the failure
  Element witness;     // offending element (empty for shape errors)
};

// nullopt means every axiom holds: the invariant factors chain, the Gram
// matrix is bilinear-consistent and antisymmetric, the induced map to the
// dual group is injective (kernel computed by integer row/column reduction),
// <x, x> = <x, c> on all generators (which extends to all x because both
// sides are homomorphisms), and consequently 2c = 0, which is re-checked.
std::optional<Violation> validate(const PairedGroup& pg);

enum class Parity { Even, Odd };
const char* to_string(Parity p);

struct ParityResult {
  Parity parity;             // Even iff <c, c> = 0
  mpq_class c_self_pairing;  // <c, c>, either 0 or 1/2
};

// Precondition: validate(pg) passed; throws std::invalid_argument otherwise.
ParityResult parity_of(const PairedGroup& pg);

// Raised by decompose if one of its internal certifying checks fails.  On
// validated input this indicates a bug, never expected behaviour; the
// message carries the failed check and the witness data.
struct ConstructionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DecompositionWitness {
  Parity parity;
  mpq_class c_self_pairing;
  // True iff <x, x> = 0 for all x (equivalently, c = 0 on validated input).
  bool alternating = false;
  // Even with c != 0: the constructed V is Z/2^n x Z/2^n; n is the smallest
  // integer >= 1 with c not in 2^n G.  Zero in the other cases.
  unsigned n = 0;
  // Basis of the split-off summand V: {} (Even, c = 0), {c} (Odd), or
  // {a, b} (Even, c != 0) with the pairing table
  // <a,a> = 0, <a,b> = 2^(-n), <b,b> = 1/2 and c = 2^(n-1) a.
  std::vector<Element> v_basis;
  std::vector<unsigned long> v_orders;  // orders of the v_basis elements
  // Generating set of the orthogonal complement of V, on which the pairing
  // was certified alternating and nondegenerate.
  std::vector<Element> complement_gens;
  // Invariant factors of T with G ~= T x T (Even) or Z/2 x T x T (Odd).
  // Empty means T is trivial.
  std::vector<unsigned long> t_invariants;
};

// Runs the constructive proof of the parity dichotomy and certifies every
// step: direct-sum split, pairing table of V, alternation and nondegeneracy
// of the complement, alternation of the modified pairing
// <x, y>^c = <x, y^c> where y^c = y or y + c according to <y, c>, and the
// T x T / Z/2 x T x T shape of the underlying group.
// Precondition: validate(pg) passed; throws std::invalid_argument otherwise.
DecompositionWitness decompose(const PairedGroup& pg);

struct EnumerateOptions {
  // A Gram-matrix shape is filled exhaustively when the number of candidate
  // fills is at most max_fills_per_shape; otherwise random_fills_per_shape
  // distinct fills are drawn deterministically from the seed.
  std::uint64_t max_fills_per_shape = 4096;
  std::uint64_t random_fills_per_shape = 256;
  std::uint64_t seed = 1;
  enum class CFilter { All, TrivialOnly, NontrivialOnly };
  CFilter c_filter = CFilter::All;
};

// Yields valid PairedGroups over the abelian 2-groups of order <= bound
// (2 <= bound <= 1024; larger bounds throw std::invalid_argument).  For each
// group shape every antisymmetric bilinear-consistent Gram fill is tried;
// degenerate fills are rejected, and for each nondegenerate fill the unique
// distinguished element c with <x, x> = <x, c> is solved for, so every
// yielded structure passes validate by construction.
std::vector<PairedGroup> enumerate_paired_groups(
    unsigned long order_bound, const EnumerateOptions& options = {});

// JSON serialization.  Schema:
//   {"invariant_factors": [2, 4],
//    "gram": [["0", "1/4"], ["3/4", "1/2"]],
//    "c": ["2", "0"]}
// Rationals are reduced fraction strings ("num/den", bare "num" when the
// denominator is 1); c coordinates are integer strings.  Parsing reduces
// fractions and coordinates to canonical form and throws
// std::invalid_argument on malformed input.
std::string paired_group_to_json(const PairedGroup& pg, bool pretty = true);
PairedGroup paired_group_from_json(const std::string& text);

}  // namespace oddjac::ctgroup

#include "oddjac/ctgroup.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oddjac/intfactor.hpp"
#include "oddjac/rng.hpp"

namespace oddjac::ctgroup {

namespace {

// Fractional part in [0, 1).
mpq_class frac(const mpq_class& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return q - fl;
}

mpz_class pow2(unsigned n) { return mpz_class(1) << n; }

std::string q_str(const mpq_class& q) { return q.get_str(); }

std::string elem_str(const Element& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += x[i].get_str();
  }
  return s + ")";
}

// Diagonalize the r x k integer matrix A by unimodular row and column
// operations.  Column operations are mirrored onto `col` (k x k, seeded with
// the identity by the caller) so that, writing C for the accumulated column
// transform, solutions of the original system in x correspond to solutions
// of the diagonal system in z via x = C z.  Row operations are mirrored onto
// *rhs when given.  Diagonal entries end up nonnegative.
void diagonalize(std::vector<std::vector<mpz_class>>& A,
                 std::vector<std::vector<mpz_class>>& col,
                 std::vector<mpz_class>* rhs) {
  const std::size_t r = A.size();
  const std::size_t k = col.size();
  auto swap_rows = [&](std::size_t i1, std::size_t i2) {
    if (i1 == i2) return;
    std::swap(A[i1], A[i2]);
    if (rhs) std::swap((*rhs)[i1], (*rhs)[i2]);
  };
  auto swap_cols = [&](std::size_t j1, std::size_t j2) {
    if (j1 == j2) return;
    for (std::size_t i = 0; i < r; ++i) std::swap(A[i][j1], A[i][j2]);
    for (std::size_t i = 0; i < k; ++i) std::swap(col[i][j1], col[i][j2]);
  };
  std::size_t t = 0;
  while (t < r && t < k) {
    // Smallest nonzero pivot in the trailing submatrix.
    std::size_t pi = r, pj = k;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < k; ++j) {
        if (A[i][j] == 0) continue;
        if (pi == r ||
            mpz_cmpabs(A[i][j].get_mpz_t(), A[pi][pj].get_mpz_t()) < 0)
          pi = i, pj = j;
      }
    if (pi == r) break;  // trailing submatrix is zero
    swap_rows(t, pi);
    swap_cols(t, pj);
    if (A[t][t] < 0) {
      for (std::size_t j = 0; j < k; ++j) A[t][j] = -A[t][j];
      if (rhs) (*rhs)[t] = -(*rhs)[t];
    }
    bool clean = true;
    for (std::size_t i = t + 1; i < r; ++i) {
      if (A[i][t] == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
      for (std::size_t j = 0; j < k; ++j) A[i][j] -= q * A[t][j];
      if (rhs) (*rhs)[i] -= q * (*rhs)[t];
      if (A[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < k; ++j) {
      if (A[t][j] == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
      for (std::size_t i = 0; i < r; ++i) A[i][j] -= q * A[i][t];
      for (std::size_t i = 0; i < k; ++i) col[i][j] -= q * col[i][t];
      if (A[t][j] != 0) clean = false;
    }
    if (clean) ++t;
  }
  // Normalize any negative diagonal entries left by the last column pass.
  for (std::size_t i = 0; i < std::min(r, k); ++i) {
    if (A[i][i] >= 0) continue;
    for (std::size_t j = 0; j < k; ++j) A[i][j] = -A[i][j];
    if (rhs) (*rhs)[i] = -(*rhs)[i];
  }
}

std::vector<std::vector<mpz_class>> identity(std::size_t k) {
  std::vector<std::vector<mpz_class>> id(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
  return id;
}

struct Subgroup {
  std::vector<Element> gens;  // generating set, zero generators dropped
  mpz_class size;
};

// The subgroup { x : <x, t> = 0 for every t in targets }.  The defining
// congruences are lifted to an integer system A x == 0 (mod M) with
// M = exp(G); its solution lattice is read off the diagonalized form and
// reduced to a generating set of the quotient subgroup.
Subgroup kernel_subgroup(const PairedGroup& pg,
                         const std::vector<Element>& targets) {
  const std::size_t k = pg.rank();
  const std::size_t r = targets.size();
  const mpz_class M = pg.exponent();
  Subgroup out;
  if (k == 0) {
    out.size = 1;
    return out;
  }
  if (r == 0) {
    for (std::size_t i = 0; i < k; ++i) out.gens.push_back(pg.basis_element(i));
    out.size = pg.order();
    return out;
  }
  std::vector<std::vector<mpz_class>> A(r, std::vector<mpz_class>(k));
  for (std::size_t t = 0; t < r; ++t)
    for (std::size_t j = 0; j < k; ++j) {
      mpq_class v = pg.pair(pg.basis_element(j), targets[t]) * M;
      assert(v.get_den() == 1);
      A[t][j] = v.get_num();
    }
  auto col = identity(k);
  diagonalize(A, col, nullptr);
  mpz_class index = 1;
  for (std::size_t i = 0; i < k; ++i) {
    mpz_class s = (i < r) ? A[i][i] : mpz_class(0);
    mpz_class g, d;
    mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), M.get_mpz_t());
    d = M / g;
    index *= d;
    Element b(k);
    for (std::size_t row = 0; row < k; ++row) b[row] = d * col[row][i];
    b = pg.reduce(b);
    if (b != pg.zero()) out.gens.push_back(b);
  }
  out.size = pg.order() / index;
  return out;
}

bool divides(unsigned long a, unsigned long b) { return a != 0 && b % a == 0; }

std::string render(const Violation& v) {
  return "validate failed: " + v.axiom + ": " + v.detail;
}

[[noreturn]] void fail(const std::string& check, const std::string& data) {
  throw ConstructionFailed("decomposition check failed: " + check + " (" +
                           data + ")");
}

// x -> x or x + c according to <x, c> in {0, 1/2}.
Element reflect(const PairedGroup& pg, const Element& x, const Element& c) {
  mpq_class xc = pg.pair(x, c);
  if (xc == 0) return pg.reduce(x);
  if (xc == mpq_class(1, 2)) return pg.add(x, c);
  fail("reflection", "<x, c> = " + q_str(xc) + " at x = " + elem_str(x));
}

// Enumerate all elements when the group is small, otherwise the basis plus a
// deterministic pseudorandom sample, and feed each to `check`.
template <typename F>
void for_sample(const PairedGroup& pg, const F& check) {
  const std::size_t k = pg.rank();
  if (pg.order() <= 512) {
    Element x = pg.zero();
    while (true) {
      check(x);
      std::size_t i = 0;
      while (i < k) {
        x[i] += 1;
        if (x[i] < pg.invariant_factors[i]) break;
        x[i] = 0;
        ++i;
      }
      if (i == k) break;
    }
    return;
  }
  for (std::size_t i = 0; i < k; ++i) check(pg.basis_element(i));
  for (std::uint64_t s = 0; s < 64; ++s) {
    Element x(k);
    for (std::size_t i = 0; i < k; ++i)
      x[i] = mpz_class(rng::word(0x9a1edULL, s, i, 0) %
                       pg.invariant_factors[i]);
    check(x);
  }
}

using DivisorMap = std::map<mpz_class, std::multiset<unsigned>>;

DivisorMap elementary_divisors(const std::vector<unsigned long>& inv) {
  DivisorMap out;
  for (unsigned long n : inv) {
    auto fr = intfactor::factor(mpz_class(n));
    if (!fr.complete)
      fail("invariant factor factorization", std::to_string(n));
    for (const auto& [p, e] : fr.factors) out[p].insert(e);
  }
  return out;
}

// Rebuild the canonical ascending invariant-factor chain from elementary
// divisors: the largest factor is the product of the top power of each
// prime, and so on down.
std::vector<unsigned long> chain_from_divisors(DivisorMap divs) {
  std::vector<unsigned long> chain;
  while (true) {
    mpz_class m = 1;
    for (auto it = divs.begin(); it != divs.end();) {
      auto top = std::prev(it->second.end());
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), it->first.get_mpz_t(), *top);
      m *= pe;
      it->second.erase(top);
      it = it->second.empty() ? divs.erase(it) : std::next(it);
    }
    if (m == 1) break;
    if (!m.fits_ulong_p()) fail("invariant factor overflow", m.get_str());
    chain.push_back(m.get_ui());
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Invariant factors of T with G ~= T x T (Even) or Z/2 x T x T (Odd).
std::vector<unsigned long> t_factors(const std::vector<unsigned long>& inv,
                                     Parity parity) {
  DivisorMap divs = elementary_divisors(inv);
  if (parity == Parity::Odd) {
    auto it = divs.find(2);
    if (it == divs.end() || it->second.count(1) == 0)
      fail("odd parity requires a split Z/2 elementary divisor", "");
    it->second.erase(it->second.find(1));
    if (it->second.empty()) divs.erase(it);
  }
  DivisorMap half;
  for (const auto& [p, ms] : divs) {
    for (auto it = ms.begin(); it != ms.end();) {
      unsigned e = *it;
      std::size_t cnt = ms.count(e);
      if (cnt % 2 != 0)
        fail("elementary divisors do not pair up",
             p.get_str() + "^" + std::to_string(e));
      for (std::size_t c = 0; c < cnt / 2; ++c) half[p].insert(e);
      it = ms.upper_bound(e);
    }
  }
  return chain_from_divisors(half);
}

}  // namespace

mpz_class PairedGroup::order() const {
  mpz_class o = 1;
  for (unsigned long n : invariant_factors) o *= n;
  return o;
}

unsigned long PairedGroup::exponent() const {
  return invariant_factors.empty() ? 1UL : invariant_factors.back();
}

Element PairedGroup::basis_element(std::size_t i) const {
  Element e = zero();
  e[i] = 1;
  return e;
}

Element PairedGroup::reduce(Element x) const {
  for (std::size_t i = 0; i < x.size() && i < rank(); ++i) {
    mpz_class n(invariant_factors[i]);
    mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), n.get_mpz_t());
  }
  return x;
}

Element PairedGroup::add(const Element& x, const Element& y) const {
  Element z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = x[i] + y[i];
  return reduce(std::move(z));
}

Element PairedGroup::scale(const mpz_class& m, const Element& x) const {
  Element z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = m * x[i];
  return reduce(std::move(z));
}

mpz_class PairedGroup::element_order(const Element& x) const {
  Element r = reduce(x);
  mpz_class ord = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    mpz_class n(invariant_factors[i]), g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), r[i].get_mpz_t());
    mpz_class oi = n / g;
    mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), oi.get_mpz_t());
  }
  return ord;
}

mpq_class PairedGroup::pair(const Element& x, const Element& y) const {
  Element a = reduce(x), b = reduce(y);
  mpq_class acc = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (b[j] == 0 || gram[i][j] == 0) continue;
      acc += mpq_class(a[i] * b[j]) * gram[i][j];
    }
  }
  return frac(acc);
}

const char* to_string(Parity p) { return p == Parity::Even ? "Even" : "Odd"; }

std::optional<Violation> validate(const PairedGroup& pg) {
  const std::size_t k = pg.rank();
  if (pg.gram.size() != k || pg.c.size() != k)
    return Violation{"shape",
                     "gram must be rank x rank and c must have rank entries",
                     {}};
  for (const auto& row : pg.gram)
    if (row.size() != k)
      return Violation{"shape", "gram must be rank x rank", {}};
  for (std::size_t i = 0; i < k; ++i) {
    if (pg.invariant_factors[i] < 2)
      return Violation{"shape", "invariant factors must be >= 2", {}};
    if (i + 1 < k &&
        !divides(pg.invariant_factors[i], pg.invariant_factors[i + 1]))
      return Violation{"divisibility-chain",
                       std::to_string(pg.invariant_factors[i]) +
                           " does not divide " +
                           std::to_string(pg.invariant_factors[i + 1]),
                       {}};
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const mpq_class& g = pg.gram[i][j];
      if (g < 0 || g >= 1)
        return Violation{"entry-range",
                         "<e" + std::to_string(i + 1) + ", e" +
                             std::to_string(j + 1) + "> = " + q_str(g) +
                             " is outside [0, 1)",
                         pg.basis_element(i)};
      mpq_class gi = g * mpz_class(pg.invariant_factors[i]);
      mpq_class gj = g * mpz_class(pg.invariant_factors[j]);
      if (gi.get_den() != 1 || gj.get_den() != 1)
        return Violation{"bilinearity",
                         "the order of neither generator clears the "
                         "denominator of <e" +
                             std::to_string(i + 1) + ", e" +
                             std::to_string(j + 1) + "> = " + q_str(g),
                         pg.basis_element(i)};
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (frac(pg.gram[i][j] + pg.gram[j][i]) != 0)
        return Violation{"antisymmetry",
                         "<e" + std::to_string(i + 1) + ", e" +
                             std::to_string(j + 1) + "> + <e" +
                             std::to_string(j + 1) + ", e" +
                             std::to_string(i + 1) + "> = " +
                             q_str(pg.gram[i][j] + pg.gram[j][i]) +
                             " is not an integer",
                         pg.basis_element(i)};
  std::vector<Element> basis;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(pg.basis_element(i));
  Subgroup radical = kernel_subgroup(pg, basis);
  if (radical.size != 1)
    return Violation{"nondegeneracy",
                     "element pairs to zero with every generator",
                     radical.gens.front()};
  Element c = pg.reduce(pg.c);
  for (std::size_t i = 0; i < k; ++i) {
    mpq_class self = pg.pair(basis[i], basis[i]);
    mpq_class with_c = pg.pair(basis[i], c);
    if (self != with_c)
      return Violation{"c-compatibility",
                       "<e" + std::to_string(i + 1) + ", e" +
                           std::to_string(i + 1) + "> = " + q_str(self) +
                           " but <e" + std::to_string(i + 1) +
                           ", c> = " + q_str(with_c),
                       basis[i]};
  }
  // Follows from the axioms above (both sides of the generator identity are
  // homomorphisms, and 2<x, x> = 0 by antisymmetry, so 2c is in the radical);
  // re-checked as stated.
  if (pg.reduce(pg.scale(2, c)) != pg.zero())
    return Violation{"c-order", "2c != 0", c};
  return std::nullopt;
}

ParityResult parity_of(const PairedGroup& pg) {
  if (auto v = validate(pg)) throw std::invalid_argument(render(*v));
  mpq_class cc = pg.pair(pg.c, pg.c);
  if (cc != 0 && cc != mpq_class(1, 2))
    throw ConstructionFailed("self-pairing of c is " + q_str(cc) +
                             ", expected 0 or 1/2");
  return {cc == 0 ? Parity::Even : Parity::Odd, cc};
}

DecompositionWitness decompose(const PairedGroup& pg) {
  ParityResult pr = parity_of(pg);  // validates
  const std::size_t k = pg.rank();
  const mpz_class order = pg.order();
  const Element c = pg.reduce(pg.c);
  const bool c_zero = (c == pg.zero());
  const mpq_class half(1, 2);

  DecompositionWitness w;
  w.parity = pr.parity;
  w.c_self_pairing = pr.c_self_pairing;
  w.alternating = true;
  for (std::size_t i = 0; i < k; ++i)
    if (pg.pair(pg.basis_element(i), pg.basis_element(i)) != 0)
      w.alternating = false;
  if (w.alternating != c_zero)
    fail("alternating iff c = 0", c_zero ? "c = 0" : "c = " + elem_str(c));

  if (pr.parity == Parity::Odd) {
    // G = {0, c} (+) c^perp.
    if (pg.element_order(c) != 2) fail("order of c", elem_str(c));
    Subgroup comp = kernel_subgroup(pg, {c});
    if (comp.size * 2 != order)
      fail("index of c^perp", comp.size.get_str() + " * 2 != " +
                                  order.get_str());
    for (const Element& g : comp.gens)
      if (pg.pair(g, g) != 0)
        fail("pairing alternating on c^perp", elem_str(g));
    std::vector<Element> targets = comp.gens;
    targets.push_back(c);
    if (kernel_subgroup(pg, targets).size != 1)
      fail("pairing nondegenerate on c^perp", "");
    w.v_basis = {c};
    w.v_orders = {2};
    w.complement_gens = comp.gens;
  } else if (c_zero) {
    // The pairing itself is alternating; nothing splits off.
    if (!w.alternating) fail("alternating with c = 0", "");
    for (std::size_t i = 0; i < k; ++i)
      w.complement_gens.push_back(pg.basis_element(i));
  } else {
    // Even with c != 0: build V = <a, b> ~= Z/2^n x Z/2^n.
    auto in_2n_G = [&](unsigned n) {
      for (std::size_t i = 0; i < k; ++i) {
        mpz_class g, ni(pg.invariant_factors[i]);
        mpz_class p2 = pow2(n);
        mpz_gcd(g.get_mpz_t(), p2.get_mpz_t(), ni.get_mpz_t());
        if (c[i] % g != 0) return false;
      }
      return true;
    };
    unsigned n = 1;
    while (in_2n_G(n)) {
      if (++n > 8 * sizeof(unsigned long))
        fail("no finite doubling depth for c", elem_str(c));
    }
    w.n = n;
    const mpz_class two_nm1 = pow2(n - 1), two_n = pow2(n);
    // Solve 2^(n-1) a = c coordinate by coordinate.
    Element a(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      mpz_class ni(pg.invariant_factors[i]), d;
      mpz_gcd(d.get_mpz_t(), two_nm1.get_mpz_t(), ni.get_mpz_t());
      if (c[i] % d != 0) fail("c not divisible by 2^(n-1)", elem_str(c));
      mpz_class nd = ni / d, base = (two_nm1 / d) % nd, inv;
      if (nd == 1) continue;
      if (mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), nd.get_mpz_t()) == 0)
        fail("halving step not invertible", base.get_str());
      a[i] = ((c[i] / d) * inv) % nd;
    }
    a = pg.reduce(a);
    // A generator of G[2^n] pairing 1/2 with c.
    Element b;
    for (std::size_t i = 0; i < k && b.empty(); ++i) {
      mpz_class ni(pg.invariant_factors[i]), g;
      mpz_class p2 = two_n;
      mpz_gcd(g.get_mpz_t(), p2.get_mpz_t(), ni.get_mpz_t());
      Element beta = pg.zero();
      beta[i] = ni / g;
      if (pg.pair(beta, c) == half) b = beta;
    }
    if (b.empty()) fail("no 2^n-torsion element pairing 1/2 with c", "");
    // Rescale a by a unit so that <a, b> = 2^(-n) exactly.
    mpq_class ab = pg.pair(a, b) * two_n;
    if (ab.get_den() != 1) fail("<a, b> has depth beyond 2^(-n)", q_str(ab));
    mpz_class u = ab.get_num() % two_n, uinv;
    if (u % 2 == 0) fail("<a, b> not of exact order 2^n", u.get_str());
    mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), two_n.get_mpz_t());
    a = pg.scale(uinv, a);
    // The pairing table of V, and the split.
    if (pg.pair(a, a) != 0) fail("<a, a> = 0", q_str(pg.pair(a, a)));
    if (pg.pair(a, b) != mpq_class(mpz_class(1), two_n))
      fail("<a, b> = 2^(-n)", q_str(pg.pair(a, b)));
    if (pg.pair(b, b) != half) fail("<b, b> = 1/2", q_str(pg.pair(b, b)));
    if (pg.scale(two_nm1, a) != c) fail("c = 2^(n-1) a", elem_str(a));
    if (pg.element_order(a) != two_n) fail("order of a", elem_str(a));
    if (pg.element_order(b) != two_n) fail("order of b", elem_str(b));
    Subgroup comp = kernel_subgroup(pg, {a, b});
    if (comp.size * two_n * two_n != order)
      fail("index of V^perp",
           comp.size.get_str() + " * 4^n != " + order.get_str());
    for (const Element& g : comp.gens)
      if (pg.pair(g, g) != 0)
        fail("pairing alternating on V^perp", elem_str(g));
    std::vector<Element> targets = comp.gens;
    targets.push_back(a);
    targets.push_back(b);
    if (kernel_subgroup(pg, targets).size != 1)
      fail("pairing nondegenerate on V^perp", "");
    if (!two_n.fits_ulong_p()) fail("2^n overflow", two_n.get_str());
    w.v_basis = {a, b};
    w.v_orders = {two_n.get_ui(), two_n.get_ui()};
    w.complement_gens = comp.gens;
  }

  // The modified pairing <x, y>^c = <x, y^c> is alternating.
  for_sample(pg, [&](const Element& x) {
    mpq_class v = pg.pair(x, reflect(pg, x, c));
    if (v != 0)
      fail("modified pairing alternating",
           elem_str(x) + " pairs " + q_str(v) + " with its reflection");
  });

  // The group is T x T (Even) or Z/2 x T x T (Odd); recover T and check the
  // reassembled invariant factors round-trip.
  w.t_invariants = t_factors(pg.invariant_factors, pr.parity);
  DivisorMap rebuilt;
  for (unsigned long m : w.t_invariants) {
    auto fr = intfactor::factor(mpz_class(m));
    for (const auto& [p, e] : fr.factors) {
      rebuilt[p].insert(e);
      rebuilt[p].insert(e);
    }
  }
  if (pr.parity == Parity::Odd) rebuilt[2].insert(1);
  if (chain_from_divisors(rebuilt) != pg.invariant_factors)
    fail("T x T reassembly", "");
  return w;
}

std::vector<PairedGroup> enumerate_paired_groups(
    unsigned long order_bound, const EnumerateOptions& options) {
  if (order_bound < 2 || order_bound > 1024)
    throw std::invalid_argument(
        "enumerate_paired_groups: order bound must be in [2, 1024]");
  // All ascending chains of powers of two with product <= bound.
  std::vector<std::vector<unsigned long>> shapes;
  std::vector<unsigned long> cur;
  auto rec = [&](auto&& self, unsigned long prod, unsigned long minf) -> void {
    for (unsigned long f = minf; prod <= order_bound / f; f *= 2) {
      cur.push_back(f);
      shapes.push_back(cur);
      self(self, prod * f, f);
      cur.pop_back();
    }
  };
  rec(rec, 1, 2);

  std::vector<PairedGroup> out;
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const auto& shape = shapes[si];
    const std::size_t k = shape.size();
    // Free slots: one diagonal entry per generator (in {0, 1/2}) followed by
    // the strict upper triangle (denominator gcd(n_i, n_j) = n_i).
    std::vector<unsigned long> choices;
    std::vector<std::pair<std::size_t, std::size_t>> slot_pos;
    for (std::size_t i = 0; i < k; ++i) {
      choices.push_back(2);
      slot_pos.emplace_back(i, i);
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        choices.push_back(shape[i]);
        slot_pos.emplace_back(i, j);
      }
    std::uint64_t total = 1;
    bool huge = false;
    for (unsigned long chc : choices) {
      if (total > options.max_fills_per_shape) {
        huge = true;
        break;
      }
      total *= chc;
    }
    huge = huge || total > options.max_fills_per_shape;

    auto try_fill = [&](const std::vector<unsigned long>& vals) {
      PairedGroup pg;
      pg.invariant_factors = shape;
      pg.gram.assign(k, std::vector<mpq_class>(k, mpq_class(0)));
      for (std::size_t s = 0; s < vals.size(); ++s) {
        auto [i, j] = slot_pos[s];
        if (i == j) {
          pg.gram[i][i] = vals[s] ? mpq_class(1, 2) : mpq_class(0);
        } else {
          mpq_class g(vals[s], shape[i]);
          g.canonicalize();
          pg.gram[i][j] = g;
          pg.gram[j][i] = frac(-g);
        }
      }
      pg.c = pg.zero();
      std::vector<Element> basis;
      for (std::size_t i = 0; i < k; ++i) basis.push_back(pg.basis_element(i));
      if (kernel_subgroup(pg, basis).size != 1) return;  // degenerate fill
      // Solve <e_i, c> = <e_i, e_i> for the unique c.
      const mpz_class M(pg.exponent());
      std::vector<std::vector<mpz_class>> A(k, std::vector<mpz_class>(k));
      std::vector<mpz_class> rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          mpq_class v = pg.gram[i][j] * M;
          A[i][j] = v.get_num();
        }
        mpq_class r = pg.gram[i][i] * M;
        rhs[i] = r.get_num();
      }
      auto col = identity(k);
      diagonalize(A, col, &rhs);
      std::vector<mpz_class> z(k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        mpz_class s = A[i][i], g;
        mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), M.get_mpz_t());
        if (rhs[i] % g != 0) return;  // no distinguished element (degenerate)
        mpz_class md = M / g;
        if (md == 1) continue;
        mpz_class base = (s / g) % md, inv;
        if (mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), md.get_mpz_t()) == 0)
          return;
        z[i] = ((rhs[i] / g) % md * inv) % md;
      }
      Element cs(k, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t t = 0; t < k; ++t) cs[i] += col[i][t] * z[t];
      pg.c = pg.reduce(cs);
      if (validate(pg)) return;  // defensive: reject anything imperfect
      const bool trivial_c = (pg.c == pg.zero());
      using CF = EnumerateOptions::CFilter;
      if (options.c_filter == CF::TrivialOnly && !trivial_c) return;
      if (options.c_filter == CF::NontrivialOnly && trivial_c) return;
      out.push_back(std::move(pg));
    };

    if (!huge) {
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<unsigned long> vals(choices.size());
        std::uint64_t rest = idx;
        for (std::size_t s = 0; s < choices.size(); ++s) {
          vals[s] = rest % choices[s];
          rest /= choices[s];
        }
        try_fill(vals);
      }
    } else {
      std::set<std::vector<unsigned long>> seen;
      std::uint64_t attempts = 16 * options.random_fills_per_shape;
      for (std::uint64_t d = 0;
           d < attempts && seen.size() < options.random_fills_per_shape; ++d) {
        std::vector<unsigned long> vals(choices.size());
        for (std::size_t s = 0; s < choices.size(); ++s)
          vals[s] = rng::word(options.seed, si, d, s) % choices[s];
        if (!seen.insert(vals).second) continue;
        try_fill(vals);
      }
    }
  }
  return out;
}

std::string paired_group_to_json(const PairedGroup& pg, bool pretty) {
  nlohmann::json j;
  j["invariant_factors"] = pg.invariant_factors;
  nlohmann::json gram = nlohmann::json::array();
  for (const auto& row : pg.gram) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& q : row) jr.push_back(q.get_str());
    gram.push_back(std::move(jr));
  }
  j["gram"] = std::move(gram);
  nlohmann::json c = nlohmann::json::array();
  for (const auto& z : pg.c) c.push_back(z.get_str());
  j["c"] = std::move(c);
  return pretty ? j.dump(2) : j.dump();
}

PairedGroup paired_group_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("paired group JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("invariant_factors") ||
      !j.contains("gram") || !j.contains("c"))
    throw std::invalid_argument(
        "paired group JSON: need invariant_factors, gram, and c");
  PairedGroup pg;
  auto parse_q = [](const nlohmann::json& v) {
    if (!v.is_string())
      throw std::invalid_argument(
          "paired group JSON: rationals must be \"num/den\" strings");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), v.get<std::string>().c_str(), 10) != 0 ||
        q.get_den() == 0)
      throw std::invalid_argument("paired group JSON: bad rational " +
                                  v.get<std::string>());
    q.canonicalize();
    return q;
  };
  try {
    for (const auto& v : j.at("invariant_factors")) {
      if (!v.is_number_unsigned())
        throw std::invalid_argument(
            "paired group JSON: invariant factors must be unsigned integers");
      pg.invariant_factors.push_back(v.get<unsigned long>());
    }
    for (const auto& row : j.at("gram")) {
      std::vector<mpq_class> r;
      for (const auto& v : row) r.push_back(parse_q(v));
      pg.gram.push_back(std::move(r));
    }
    for (const auto& v : j.at("c")) {
      if (!v.is_string())
        throw std::invalid_argument(
            "paired group JSON: c coordinates must be integer strings");
      pg.c.emplace_back(0);
      if (mpz_set_str(pg.c.back().get_mpz_t(), v.get<std::string>().c_str(),
                      10) != 0)
        throw std::invalid_argument("paired group JSON: bad integer " +
                                    v.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("paired group JSON: ") + e.what());
  }
  if (pg.c.size() == pg.rank() &&
      std::all_of(pg.invariant_factors.begin(), pg.invariant_factors.end(),
                  [](unsigned long n) { return n >= 1; }))
    pg.c = pg.reduce(pg.c);
  return pg;
}

}  // namespace oddjac::ctgroup

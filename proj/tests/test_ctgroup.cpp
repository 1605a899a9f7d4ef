// Paired-group structure tests.  Every library verdict here is checked
// against an independent brute-force oracle that enumerates group elements
// directly: axiom validation against an exhaustive axiom scan, parity
// against a direct evaluation of <c, c>, decomposition witnesses against
// set-level subgroup closure (direct sum, orthogonality, alternation), and
// the reported T against an elementary-divisor reassembly with its own
// trial-division factoring.
#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "oddjac/ctgroup.hpp"

using namespace oddjac::ctgroup;
using Vec = std::vector<mpz_class>;

namespace {

mpq_class Q(long n, long d = 1) { return mpq_class(n, d); }

mpq_class ofrac(const mpq_class& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return q - fl;
}

// Independent pairing evaluation (no reuse of PairedGroup::pair).
mpq_class opair(const PairedGroup& pg, const Vec& x, const Vec& y) {
  mpq_class acc = 0;
  for (std::size_t i = 0; i < pg.rank(); ++i)
    for (std::size_t j = 0; j < pg.rank(); ++j)
      acc += mpq_class(x[i] * y[j]) * pg.gram[i][j];
  return ofrac(acc);
}

std::vector<Vec> all_elements(const PairedGroup& pg) {
  std::vector<Vec> out;
  Vec x(pg.rank(), 0);
  while (true) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < pg.rank()) {
      x[i] += 1;
      if (x[i] < pg.invariant_factors[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == pg.rank()) break;
  }
  return out;
}

// Exhaustive axiom scan: same verdict as validate() must come out.
bool oracle_valid(const PairedGroup& pg) {
  const std::size_t k = pg.rank();
  if (pg.gram.size() != k || pg.c.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (pg.invariant_factors[i] < 2) return false;
    if (i + 1 < k && pg.invariant_factors[i + 1] % pg.invariant_factors[i] != 0)
      return false;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const mpq_class& g = pg.gram[i][j];
      if (g < 0 || g >= 1) return false;
      mpq_class gi = g * mpz_class(pg.invariant_factors[i]);
      mpq_class gj = g * mpz_class(pg.invariant_factors[j]);
      if (gi.get_den() != 1 || gj.get_den() != 1) return false;
      if (ofrac(pg.gram[i][j] + pg.gram[j][i]) != 0) return false;
    }
  auto elems = all_elements(pg);
  for (const Vec& x : elems) {
    if (x == Vec(k, 0)) continue;
    bool radical = true;
    for (std::size_t j = 0; j < k; ++j) {
      Vec ej(k, 0);
      ej[j] = 1;
      if (opair(pg, x, ej) != 0) radical = false;
    }
    if (radical) return false;
  }
  Vec c = pg.reduce(pg.c);
  for (const Vec& x : elems)
    if (opair(pg, x, x) != opair(pg, x, c)) return false;
  if (pg.reduce(pg.scale(2, c)) != Vec(k, 0)) return false;
  return true;
}

// Subgroup closure of a generating set.
std::set<Vec> span_of(const PairedGroup& pg, const std::vector<Vec>& gens) {
  std::set<Vec> seen{Vec(pg.rank(), 0)};
  std::vector<Vec> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    Vec x = frontier.back();
    frontier.pop_back();
    for (const Vec& g : gens) {
      Vec y = pg.add(x, g);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen;
}

bool is_square(const mpz_class& n) {
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_twice_square(const mpz_class& n) {
  return n % 2 == 0 && is_square(n / 2);
}

// Test-side trial-division elementary divisors (all inputs here are tiny).
std::multiset<unsigned long> odivisors(const std::vector<unsigned long>& inv) {
  std::multiset<unsigned long> out;
  for (unsigned long n : inv) {
    for (unsigned long p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      unsigned long pe = 1;
      while (n % p == 0) pe *= p, n /= p;
      out.insert(pe);
    }
    if (n > 1) out.insert(n);
  }
  return out;
}

// Full brute-force verification of a decomposition witness.
void check_witness(const PairedGroup& pg, const DecompositionWitness& w) {
  auto elems = all_elements(pg);
  const Vec zero(pg.rank(), 0);
  const Vec c = pg.reduce(pg.c);

  // Parity against direct evaluation.
  mpq_class cc = opair(pg, c, c);
  CHECK(w.c_self_pairing == cc);
  CHECK((w.parity == Parity::Even) == (cc == 0));

  // Alternation flag against a full scan.
  bool alt = true;
  for (const Vec& x : elems)
    if (opair(pg, x, x) != 0) alt = false;
  CHECK(w.alternating == alt);

  // Direct sum: spans intersect trivially and sizes multiply to the order.
  auto vspan = span_of(pg, w.v_basis);
  auto cspan = span_of(pg, w.complement_gens);
  std::vector<Vec> inter;
  std::set_intersection(vspan.begin(), vspan.end(), cspan.begin(), cspan.end(),
                        std::back_inserter(inter));
  CHECK(inter == std::vector<Vec>{zero});
  CHECK(mpz_class(vspan.size()) * mpz_class(cspan.size()) == pg.order());

  // The complement is orthogonal to V and the pairing alternates on it.
  for (const Vec& v : w.v_basis)
    for (const Vec& g : w.complement_gens) CHECK(opair(pg, v, g) == 0);
  for (const Vec& x : cspan) CHECK(opair(pg, x, x) == 0);
  // ... and is nondegenerate there.
  for (const Vec& x : cspan) {
    if (x == zero) continue;
    bool rad = true;
    for (const Vec& y : cspan)
      if (opair(pg, x, y) != 0) rad = false;
    CHECK_FALSE(rad);
  }

  // Witness orders are the true element orders.
  REQUIRE(w.v_basis.size() == w.v_orders.size());
  for (std::size_t i = 0; i < w.v_basis.size(); ++i)
    CHECK(pg.element_order(w.v_basis[i]) == w.v_orders[i]);

  // Shape of V and its pairing table.
  if (w.parity == Parity::Odd) {
    CHECK(w.v_basis == std::vector<Vec>{c});
    CHECK(w.n == 0);
    // The complement is exactly c^perp.
    std::set<Vec> cperp;
    for (const Vec& x : elems)
      if (opair(pg, x, c) == 0) cperp.insert(x);
    CHECK(cspan == cperp);
  } else if (c == zero) {
    CHECK(w.v_basis.empty());
    CHECK(w.n == 0);
    CHECK(cspan.size() == elems.size());
  } else {
    REQUIRE(w.v_basis.size() == 2);
    REQUIRE(w.n >= 1);
    const Vec &a = w.v_basis[0], &b = w.v_basis[1];
    mpz_class two_n = mpz_class(1) << w.n;
    CHECK(vspan.size() == two_n * two_n);
    CHECK(opair(pg, a, a) == 0);
    CHECK(opair(pg, a, b) == mpq_class(mpz_class(1), two_n));
    CHECK(opair(pg, b, b) == Q(1, 2));
    CHECK(pg.reduce(pg.scale(two_n / 2, a)) == c);
    // Minimality of n: c is in 2^(n-1) G but not 2^n G.
    auto in_2m = [&](unsigned m) {
      for (const Vec& x : elems)
        if (pg.reduce(pg.scale(mpz_class(1) << m, x)) == c) return true;
      return false;
    };
    CHECK(in_2m(w.n - 1));
    CHECK_FALSE(in_2m(w.n));
  }

  // G ~= T x T (Even) or Z/2 x T x T (Odd), via elementary divisors.
  std::multiset<unsigned long> expect = odivisors(w.t_invariants);
  std::multiset<unsigned long> doubled(expect);
  doubled.insert(expect.begin(), expect.end());
  if (w.parity == Parity::Odd) doubled.insert(2);
  CHECK(doubled == odivisors(pg.invariant_factors));
  // ... and the T chain is a canonical invariant-factor chain.
  for (std::size_t i = 0; i + 1 < w.t_invariants.size(); ++i)
    CHECK(w.t_invariants[i + 1] % w.t_invariants[i] == 0);
}

PairedGroup z2_odd() { return {{2}, {{Q(1, 2)}}, {1}}; }

PairedGroup hyperbolic22(Vec c) {
  return {{2, 2}, {{Q(0), Q(1, 2)}, {Q(1, 2), Q(0)}}, std::move(c)};
}

PairedGroup even_nontrivial22() {
  return {{2, 2}, {{Q(0), Q(1, 2)}, {Q(1, 2), Q(1, 2)}}, {1, 0}};
}

PairedGroup depth2_44() {
  return {{4, 4}, {{Q(0), Q(1, 4)}, {Q(3, 4), Q(1, 2)}}, {2, 0}};
}

PairedGroup odd_block222() {
  return {{2, 2, 2},
          {{Q(1, 2), Q(0), Q(0)}, {Q(0), Q(0), Q(1, 2)}, {Q(0), Q(1, 2), Q(0)}},
          {1, 0, 0}};
}

}  // namespace

TEST_CASE("pairing axioms against exhaustive checking") {
  // Frozen verdicts.
  CHECK_FALSE(validate(z2_odd()).has_value());
  CHECK_FALSE(validate(hyperbolic22({0, 0})).has_value());

  auto v = validate(hyperbolic22({1, 0}));
  REQUIRE(v.has_value());
  CHECK(v->axiom == "c-compatibility");
  CHECK(v->witness == Vec{0, 1});  // e2: <e2,e2> = 0 but <e2,c> = 1/2
  CHECK(v->detail.find("1/2") != std::string::npos);

  // Degenerate pairing: the witness element annihilates everything.
  auto d = validate(PairedGroup{{2, 2},
                                {{Q(0), Q(0)}, {Q(0), Q(1, 2)}},
                                {0, 1}});
  REQUIRE(d.has_value());
  CHECK(d->axiom == "nondegeneracy");
  REQUIRE_FALSE(d->witness.empty());
  PairedGroup degen{{2, 2}, {{Q(0), Q(0)}, {Q(0), Q(1, 2)}}, {0, 1}};
  CHECK(d->witness != Vec{0, 0});
  for (std::size_t j = 0; j < 2; ++j) {
    Vec ej(2, 0);
    ej[j] = 1;
    CHECK(opair(degen, d->witness, ej) == 0);
  }

  // Structural axioms.
  CHECK(validate(PairedGroup{{2, 3}, {{Q(0), Q(0)}, {Q(0), Q(0)}}, {0, 0}})
            ->axiom == "divisibility-chain");
  CHECK(validate(PairedGroup{{2}, {{Q(1, 3)}}, {0}})->axiom == "bilinearity");
  CHECK(validate(PairedGroup{{4, 4},
                             {{Q(0), Q(1, 4)}, {Q(1, 4), Q(0)}},
                             {0, 0}})
            ->axiom == "antisymmetry");
  CHECK(validate(PairedGroup{{2}, {{Q(3, 2)}}, {0}})->axiom == "entry-range");
  CHECK(validate(PairedGroup{{2}, {{Q(1, 2)}, {Q(0)}}, {1}})->axiom ==
        "shape");
  CHECK(validate(PairedGroup{{1}, {{Q(0)}}, {0}})->axiom == "shape");
  // Trivial group: every axiom holds vacuously.
  CHECK_FALSE(validate(PairedGroup{{}, {}, {}}).has_value());

  // Cross-validation against the exhaustive oracle over raw fills: all
  // gram entries and c range freely, so every axiom gets exercised.
  auto cross = [&](const std::vector<unsigned long>& shape,
                   unsigned long den) {
    const std::size_t k = shape.size();
    std::vector<unsigned long> radix(k * k, den);
    for (std::size_t i = 0; i < k; ++i) radix.push_back(shape[i]);
    std::vector<unsigned long> v(radix.size(), 0);
    std::size_t checked = 0;
    while (true) {
      PairedGroup pg;
      pg.invariant_factors = shape;
      pg.gram.assign(k, std::vector<mpq_class>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          mpq_class g(v[i * k + j], den);
          g.canonicalize();
          pg.gram[i][j] = g;
        }
      for (std::size_t i = 0; i < k; ++i)
        pg.c.push_back(mpz_class(v[k * k + i]));
      CHECK(oracle_valid(pg) == !validate(pg).has_value());
      ++checked;
      std::size_t i = 0;
      while (i < radix.size()) {
        v[i] += 1;
        if (v[i] < radix[i]) break;
        v[i] = 0;
        ++i;
      }
      if (i == radix.size()) break;
    }
    return checked;
  };
  CHECK(cross({2}, 2) == 4);        // 2 grams x 2 c
  CHECK(cross({4}, 4) == 16);       // includes antisymmetry failures
  CHECK(cross({2, 2}, 2) == 64);    // all 16 raw grams x 4 c
  CHECK(cross({2, 4}, 4) == 2048);  // includes bilinearity failures
}

TEST_CASE("parity of the distinguished element") {
  auto p1 = parity_of(z2_odd());
  CHECK(p1.parity == Parity::Odd);
  CHECK(p1.c_self_pairing == Q(1, 2));
  CHECK(std::string(to_string(p1.parity)) == "Odd");

  // Even with c != 0: square order without the pairing being alternating.
  auto p2 = parity_of(even_nontrivial22());
  CHECK(p2.parity == Parity::Even);
  CHECK(p2.c_self_pairing == 0);
  CHECK(even_nontrivial22().reduce(even_nontrivial22().c) != Vec{0, 0});

  // c = 0 is always Even.
  CHECK(parity_of(hyperbolic22({0, 0})).parity == Parity::Even);
  CHECK(parity_of(PairedGroup{{}, {}, {}}).parity == Parity::Even);
  CHECK(parity_of(odd_block222()).parity == Parity::Odd);
  CHECK(parity_of(depth2_44()).parity == Parity::Even);

  // Invalid input is rejected up front.
  CHECK_THROWS_AS(parity_of(hyperbolic22({1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(decompose(hyperbolic22({1, 0})), std::invalid_argument);
}

TEST_CASE("decomposition witnesses certify the split") {
  // Z/2 with <1,1> = 1/2: V = {0, c}, trivial complement and T.
  auto w1 = decompose(z2_odd());
  CHECK(w1.parity == Parity::Odd);
  CHECK(w1.v_basis == std::vector<Vec>{{1}});
  CHECK(w1.v_orders == std::vector<unsigned long>{2});
  CHECK(w1.complement_gens.empty());
  CHECK(w1.t_invariants.empty());
  check_witness(z2_odd(), w1);

  // (Z/2)^2, Even with c = e1: depth n = 1, a = e1, b = e2, V is the whole
  // group, empty complement, T = Z/2.
  auto w2 = decompose(even_nontrivial22());
  CHECK(w2.parity == Parity::Even);
  CHECK_FALSE(w2.alternating);
  CHECK(w2.n == 1);
  CHECK(w2.v_basis == std::vector<Vec>{{1, 0}, {0, 1}});
  CHECK(w2.v_orders == std::vector<unsigned long>{2, 2});
  CHECK(w2.complement_gens.empty());
  CHECK(w2.t_invariants == std::vector<unsigned long>{2});
  check_witness(even_nontrivial22(), w2);

  // (Z/4)^2 with c = 2 e1: the depth-2 picture, T = Z/4.
  auto w3 = decompose(depth2_44());
  CHECK(w3.parity == Parity::Even);
  CHECK(w3.n == 2);
  CHECK(w3.v_basis.size() == 2);
  CHECK(w3.v_orders == std::vector<unsigned long>{4, 4});
  CHECK(w3.t_invariants == std::vector<unsigned long>{4});
  check_witness(depth2_44(), w3);

  // Same with the off-diagonal flipped so the raw <a, b> = 3/4: the basis
  // element a must be rescaled by the unit 3 to land exactly on 1/4.
  PairedGroup resc{{4, 4}, {{Q(0), Q(3, 4)}, {Q(1, 4), Q(1, 2)}}, {2, 0}};
  auto w4 = decompose(resc);
  CHECK(w4.n == 2);
  CHECK(w4.v_basis[0] == Vec{3, 0});
  CHECK(resc.pair(w4.v_basis[0], w4.v_basis[1]) == Q(1, 4));
  check_witness(resc, w4);

  // Alternating case: hyperbolic plane, nothing splits off, T = Z/2.
  auto w5 = decompose(hyperbolic22({0, 0}));
  CHECK(w5.parity == Parity::Even);
  CHECK(w5.alternating);
  CHECK(w5.v_basis.empty());
  CHECK(w5.t_invariants == std::vector<unsigned long>{2});
  check_witness(hyperbolic22({0, 0}), w5);

  // Odd with a nontrivial complement: Z/2 block plus a hyperbolic plane.
  auto w6 = decompose(odd_block222());
  CHECK(w6.parity == Parity::Odd);
  CHECK(w6.v_basis == std::vector<Vec>{{1, 0, 0}});
  CHECK(w6.complement_gens ==
        std::vector<Vec>{{0, 1, 0}, {0, 0, 1}});
  CHECK(w6.t_invariants == std::vector<unsigned long>{2});
  check_witness(odd_block222(), w6);

  // Odd-prime content rides along in T: hyperbolic plane over Z/6.
  PairedGroup h66{{6, 6}, {{Q(0), Q(1, 6)}, {Q(5, 6), Q(0)}}, {0, 0}};
  auto w7 = decompose(h66);
  CHECK(w7.parity == Parity::Even);
  CHECK(w7.alternating);
  CHECK(w7.t_invariants == std::vector<unsigned long>{6});
  check_witness(h66, w7);

  // Determinism.
  auto r1 = decompose(depth2_44()), r2 = decompose(depth2_44());
  CHECK(r1.v_basis == r2.v_basis);
  CHECK(r1.complement_gens == r2.complement_gens);
  CHECK(r1.t_invariants == r2.t_invariants);
}

TEST_CASE("square and twice-square order laws") {
  // Exhaustive regime: every valid paired 2-group of order <= 16 gets a
  // decomposition, fully brute-verified, and obeys the order laws.
  std::size_t n_odd = 0, n_even = 0;
  for (const PairedGroup& pg : enumerate_paired_groups(16)) {
    REQUIRE_FALSE(validate(pg).has_value());
    auto w = decompose(pg);  // ConstructionFailed here is a test failure
    check_witness(pg, w);
    mpz_class order = pg.order();
    std::size_t even_factors = 0;
    for (unsigned long n : pg.invariant_factors)
      if (n % 2 == 0) ++even_factors;
    mpz_class two_tor = mpz_class(1) << even_factors;
    if (w.parity == Parity::Odd) {
      ++n_odd;
      CHECK(is_twice_square(order));
      CHECK(is_twice_square(two_tor));
    } else {
      ++n_even;
      CHECK(is_square(order));
      CHECK(is_square(two_tor));
    }
  }
  CHECK(n_odd > 0);
  CHECK(n_even > 0);

  // Larger random regime: the laws and the internal certification hold up
  // to order 256 (decompose re-checks every split it constructs).
  EnumerateOptions opts;
  opts.max_fills_per_shape = 128;
  opts.random_fills_per_shape = 12;
  opts.seed = 5;
  std::size_t n_seen = 0, n_deep = 0;
  for (const PairedGroup& pg : enumerate_paired_groups(256, opts)) {
    auto w = decompose(pg);
    mpz_class order = pg.order();
    CHECK((w.parity == Parity::Odd ? is_twice_square(order)
                                   : is_square(order)));
    if (w.n >= 2) ++n_deep;
    ++n_seen;
  }
  CHECK(n_seen > 100);
  CHECK(n_deep > 0);  // depth >= 2 splits do occur in the wild
}

TEST_CASE("modified pairing and reflection") {
  auto reflect = [](const PairedGroup& pg, const Vec& x, const Vec& c) {
    return opair(pg, x, c) == 0 ? pg.reduce(x) : pg.add(x, c);
  };
  auto run = [&](const PairedGroup& pg) {
    const Vec c = pg.reduce(pg.c);
    const Vec zero(pg.rank(), 0);
    auto elems = all_elements(pg);
    Parity parity = parity_of(pg).parity;
    // The modified pairing <x, y>^c = <x, y^c> is alternating...
    for (const Vec& x : elems) CHECK(opair(pg, x, reflect(pg, x, c)) == 0);
    if (parity == Parity::Even) {
      // ... and nondegenerate in the Even case, where the reflection is an
      // involution.
      for (const Vec& x : elems) CHECK(reflect(pg, reflect(pg, x, c), c) == x);
      for (const Vec& x : elems) {
        if (x == zero) continue;
        bool rad = true;
        for (const Vec& y : elems)
          if (opair(pg, x, reflect(pg, y, c)) != 0) rad = false;
        CHECK_FALSE(rad);
      }
      if (c != zero) {  // genuinely of order 2, not the identity
        bool moved = false;
        for (const Vec& x : elems)
          if (reflect(pg, x, c) != x) moved = true;
        CHECK(moved);
      }
    } else {
      // Odd case: reflection projects onto c^perp with kernel {0, c}.
      for (const Vec& x : elems) {
        Vec px = reflect(pg, x, c);
        CHECK(opair(pg, px, c) == 0);
        CHECK(reflect(pg, px, c) == px);
      }
      std::set<Vec> kernel;
      for (const Vec& x : elems)
        if (reflect(pg, x, c) == zero) kernel.insert(x);
      CHECK(kernel == std::set<Vec>{zero, c});
    }
  };
  run(z2_odd());
  run(even_nontrivial22());
  run(hyperbolic22({0, 0}));
  run(depth2_44());
  run(odd_block222());
  for (const PairedGroup& pg : enumerate_paired_groups(8)) run(pg);
}

TEST_CASE("enumeration of small paired 2-groups") {
  // Order 2: the degenerate fill is rejected; what survives is the single
  // odd class Z/2 with <1,1> = 1/2 and c = 1.
  auto two = enumerate_paired_groups(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0] == z2_odd());

  // Order 4: Z/4 admits no valid pairing at all (both fills are
  // degenerate), while (Z/2)^2 has four nondegenerate fills: the
  // alternating hyperbolic plane (c = 0) plus three with c != 0.
  auto four = enumerate_paired_groups(4);
  CHECK(four.size() == 5);
  std::size_t alt = 0, nonalt = 0, on_z4 = 0;
  for (const PairedGroup& pg : four) {
    REQUIRE_FALSE(validate(pg).has_value());
    if (pg.invariant_factors == std::vector<unsigned long>{4}) ++on_z4;
    if (pg.invariant_factors != std::vector<unsigned long>{2, 2}) continue;
    if (pg.reduce(pg.c) == Vec{0, 0}) {
      ++alt;
      CHECK(pg == hyperbolic22({0, 0}));
    } else {
      ++nonalt;
    }
  }
  CHECK(on_z4 == 0);
  CHECK(alt == 1);
  CHECK(nonalt == 3);
  CHECK(std::count_if(four.begin(), four.end(), [](const PairedGroup& pg) {
          return parity_of(pg).parity == Parity::Odd;
        }) == 1);

  // The c filters partition the full listing.
  EnumerateOptions triv, nontriv;
  triv.c_filter = EnumerateOptions::CFilter::TrivialOnly;
  nontriv.c_filter = EnumerateOptions::CFilter::NontrivialOnly;
  CHECK(enumerate_paired_groups(4, triv).size() == 1);
  CHECK(enumerate_paired_groups(4, nontriv).size() == 4);

  // Everything yielded validates, and both parities and a depth-2 class
  // show up by order 16.
  auto sixteen = enumerate_paired_groups(16);
  std::size_t odd = 0, even = 0, deep = 0;
  for (const PairedGroup& pg : sixteen) {
    REQUIRE_FALSE(validate(pg).has_value());
    auto pr = parity_of(pg);
    (pr.parity == Parity::Odd ? odd : even) += 1;
    if (pr.parity == Parity::Even && pg.reduce(pg.c) != Vec(pg.rank(), 0) &&
        decompose(pg).n == 2)
      ++deep;
  }
  CHECK(odd > 0);
  CHECK(even > 0);
  CHECK(deep > 0);
  // Determinism of the whole listing.
  CHECK(enumerate_paired_groups(16) == sixteen);

  CHECK_THROWS_AS(enumerate_paired_groups(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_paired_groups(2048), std::invalid_argument);
}

TEST_CASE("json round trip") {
  for (const PairedGroup& pg :
       {z2_odd(), even_nontrivial22(), depth2_44(), odd_block222()}) {
    PairedGroup back = paired_group_from_json(paired_group_to_json(pg));
    CHECK(back == pg);
    CHECK_FALSE(validate(back).has_value());
    // Compact form round-trips identically too.
    CHECK(paired_group_from_json(paired_group_to_json(pg, false)) == pg);
  }
  for (const PairedGroup& pg : enumerate_paired_groups(8))
    CHECK(paired_group_from_json(paired_group_to_json(pg)) == pg);

  // Emitted rationals are reduced fraction strings.
  std::string text = paired_group_to_json(depth2_44(), false);
  CHECK(text.find("\"1/4\"") != std::string::npos);
  CHECK(text.find("\"3/4\"") != std::string::npos);
  CHECK(text.find("\"1/2\"") != std::string::npos);
  CHECK(text.find("2/4") == std::string::npos);

  // Parsing canonicalizes fractions and reduces c coordinates.
  PairedGroup lax = paired_group_from_json(
      R"({"invariant_factors": [2], "gram": [["2/4"]], "c": ["3"]})");
  CHECK(lax == z2_odd());

  // Malformed input is rejected.
  CHECK_THROWS_AS(paired_group_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(paired_group_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(paired_group_from_json(
                      R"({"invariant_factors": [2], "gram": [["1/0"]],
                          "c": ["0"]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(paired_group_from_json(
                      R"({"invariant_factors": [2], "gram": [[0.5]],
                          "c": ["0"]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(paired_group_from_json(
                      R"({"invariant_factors": [-2], "gram": [["1/2"]],
                          "c": ["1"]})"),
                  std::invalid_argument);
  // Structural problems surface in validate, not in parsing.
  PairedGroup mishape = paired_group_from_json(
      R"({"invariant_factors": [2, 2], "gram": [["1/2"]], "c": ["1"]})");
  CHECK(validate(mishape).has_value());
}

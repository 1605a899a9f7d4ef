#include "doctest.h"

#include <set>
#include <vector>

#include "oddjac/realroots.hpp"
#include "oddjac/rng.hpp"

using namespace oddjac;
using realroots::IPoly;

namespace {

IPoly mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Closed-form count of distinct real roots for degree <= 3 (discriminant
// case analysis) -- an oracle independent of the Sturm machinery.
int closed_form_roots(long a, long b, long c, long d) {
  if (a == 0) {
    if (b == 0) return c == 0 ? 0 : 1;  // constant (d) or linear cx+d
    mpz_class disc = mpz_class(c) * c - 4 * mpz_class(b) * d;
    return disc > 0 ? 2 : (disc == 0 ? 1 : 0);
  }
  mpz_class A = a, B = b, C = c, D = d;
  mpz_class disc = 18 * A * B * C * D - 4 * B * B * B * D + B * B * C * C -
                   4 * A * C * C * C - 27 * A * A * D * D;
  if (disc > 0) return 3;
  if (disc < 0) return 1;
  mpz_class d0 = B * B - 3 * A * C;
  return d0 == 0 ? 1 : 2;
}

}  // namespace

TEST_CASE("fixed root counts") {
  CHECK(realroots::distinct_real_roots({-2, 0, 1}) == 2);        // x^2-2
  CHECK(realroots::distinct_real_roots({1, 0, 1}) == 0);         // x^2+1
  CHECK(realroots::distinct_real_roots({4, 0, -4, 0, 1}) == 2);  // (x^2-2)^2
  CHECK(realroots::distinct_real_roots({0, -1, 0, 0, 1}) ==
        2);  // x^4 - x = x(x^3-1): roots 0, 1
  CHECK(realroots::distinct_real_roots({0, -1, 0, 1}) == 3);  // x^3-x
  IPoly six = {1};
  for (long k = 1; k <= 6; ++k) six = mul(six, {-k, 1});
  CHECK(realroots::distinct_real_roots(six) == 6);
  CHECK(realroots::distinct_real_roots({7}) == 0);
}

TEST_CASE("degree <= 3 exhaustive against discriminant case analysis") {
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        for (long d = -2; d <= 2; ++d) {
          if (a == 0 && b == 0 && c == 0 && d == 0) continue;
          IPoly f = {mpz_class(d), mpz_class(c), mpz_class(b), mpz_class(a)};
          CHECK(realroots::distinct_real_roots(f) == closed_form_roots(a, b, c, d));
        }
}

TEST_CASE("constructed polynomials with known real roots (multiplicities, complex pairs)") {
  for (std::uint64_t it = 0; it < 500; ++it) {
    std::uint64_t block = 0;
    IPoly f = {rng::uniform_below(2, 404, it, 0, block) == 0 ? mpz_class(1) : mpz_class(-3)};
    std::set<long> roots;
    unsigned nlin = static_cast<unsigned>(rng::uniform_below(4, 404, it, 1, block));
    for (unsigned i = 0; i < nlin; ++i) {
      long r = static_cast<long>(rng::uniform_below(19, 404, it, 2 + i, block)) - 9;
      unsigned m = 1 + static_cast<unsigned>(rng::uniform_below(3, 404, it, 10 + i, block));
      roots.insert(r);
      for (unsigned j = 0; j < m; ++j) f = mul(f, {-r, 1});
    }
    unsigned nquad = static_cast<unsigned>(rng::uniform_below(3, 404, it, 20, block));
    for (unsigned i = 0; i < nquad; ++i) {
      long u = static_cast<long>(rng::uniform_below(11, 404, it, 21 + i, block)) - 5;
      long v = 1 + static_cast<long>(rng::uniform_below(20, 404, it, 30 + i, block));
      // (x-u)^2 + v, no real roots
      f = mul(f, {u * u + v, -2 * u, 1});
    }
    CHECK(realroots::distinct_real_roots(f) == static_cast<int>(roots.size()));

    // Interval count: roots in (-9.5, 0.5]
    mpq_class lo(-19, 2), hi(1, 2);
    int expect = 0;
    for (long r : roots)
      if (mpq_class(r) > lo && mpq_class(r) <= hi) ++expect;
    CHECK(realroots::distinct_real_roots_in(f, lo, hi) == expect);
  }
}

TEST_CASE("sign_at evaluates exactly at rationals") {
  IPoly f = {-2, 0, 1};  // x^2 - 2
  CHECK(realroots::sign_at(f, mpq_class(3, 2)) == 1);    // 9/4 - 2 > 0
  CHECK(realroots::sign_at(f, mpq_class(7, 5)) == -1);   // 49/25 - 2 < 0
  CHECK(realroots::sign_at({0, 1}, mpq_class(0)) == 0);  // x at 0
}

TEST_CASE("negative definiteness") {
  // -(x^6 + x + 1) is everywhere negative (min of x^6+x is > -1).
  CHECK(realroots::negative_definite({-1, -1, 0, 0, 0, 0, -1}));
  // -(x^6 + x) vanishes at 0.
  CHECK(!realroots::negative_definite({0, -1, 0, 0, 0, 0, -1}));
  // -(x-3)^2 (x^2+1): nonpositive but touches zero at x = 3.
  IPoly touch = mul(mul({-3, 1}, {-3, 1}), {1, 0, 1});
  for (mpz_class& c : touch) c = -c;
  CHECK(!realroots::negative_definite(touch));
  // Positive leading coefficient can never be negative definite.
  CHECK(!realroots::negative_definite({-5, 0, 1}));
  // Odd degree never.
  CHECK(!realroots::negative_definite({-5, -1, 0, -1}));
  // Constants.
  CHECK(realroots::negative_definite({-4}));
  CHECK(!realroots::negative_definite({4}));
  CHECK(!realroots::negative_definite({}));
  CHECK(!realroots::negative_definite({0}));
  // Strictly negative products -((x-u)^2 + v) * ... are negative definite.
  for (std::uint64_t it = 0; it < 200; ++it) {
    std::uint64_t block = 0;
    IPoly f = {-1};
    unsigned nquad = 1 + static_cast<unsigned>(rng::uniform_below(3, 505, it, 0, block));
    for (unsigned i = 0; i < nquad; ++i) {
      long u = static_cast<long>(rng::uniform_below(11, 505, it, 1 + i, block)) - 5;
      long v = 1 + static_cast<long>(rng::uniform_below(20, 505, it, 10 + i, block));
      f = mul(f, {u * u + v, -2 * u, 1});
    }
    CHECK(realroots::negative_definite(f));
    // Flip sign: positive definite, not negative.
    IPoly g = f;
    for (mpz_class& c : g) c = -c;
    CHECK(!realroots::negative_definite(g));
  }
}

TEST_CASE("large coefficient stability (no overflow, exact arithmetic)") {
  // ((10^20 x - 1)(x - 10^20))^2 has 2 distinct roots.
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 20);
  IPoly f = mul(IPoly{-1, big}, IPoly{-big, 1});
  IPoly f2 = mul(f, f);
  CHECK(realroots::distinct_real_roots(f2) == 2);
  CHECK(realroots::distinct_real_roots(f) == 2);
}

// Exact real-root counting for integer polynomials via Sturm chains built
// from integer pseudo-remainder sequences (no floating point anywhere).
#pragma once

#include <vector>

#include <gmpxx.h>

namespace oddjac::realroots {

// Polynomial with integer coefficients, constant term first.
using IPoly = std::vector<mpz_class>;

// Number of distinct real roots of f (multiple roots counted once).
// f must be nonzero after trailing-zero stripping; a nonzero constant has 0
// roots.
int distinct_real_roots(const IPoly& f);

// Number of distinct real roots in the half-open interval (a, b], a < b,
// requiring f(a) != 0 and f(b) != 0.
int distinct_real_roots_in(const IPoly& f, const mpq_class& a, const mpq_class& b);

// True iff f(x) < 0 for every real x. (The zero polynomial is not.)
bool negative_definite(const IPoly& f);

// Sign of f at a rational point: -1, 0, +1.
int sign_at(const IPoly& f, const mpq_class& x);

}  // namespace oddjac::realroots

// Exact integer linear algebra helpers for polynomial invariants.
#pragma once

#include <gmpxx.h>

#include <vector>

namespace oddjac::intpoly {

// Determinant of a square integer matrix by fraction-free (Bareiss)
// elimination with row pivoting; exact.
mpz_class determinant(std::vector<std::vector<mpz_class>> m);

// Resultant of two binary forms A = sum a_i x^i z^{dA-i}, B likewise, where
// the formal degrees are dA = A.size()-1 and dB = B.size()-1 (leading
// coefficients may be zero; the Sylvester matrix is built from the formal
// degrees). Requires dA >= 1 or dB >= 1.
mpz_class formal_resultant(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b);

}  // namespace oddjac::intpoly

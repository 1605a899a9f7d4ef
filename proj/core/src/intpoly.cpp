#include "oddjac/intpoly.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace oddjac::intpoly {

mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const int dim = static_cast<int>(m.size());
  if (dim == 0) return 1;
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != dim) throw std::invalid_argument("determinant: matrix not square");
  if (dim == 1) return m[0][0];
  // Fraction-free Gaussian elimination: every division below is exact.
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < dim - 1; ++k) {
    if (m[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int swap = -1;
      for (int r = k + 1; r < dim; ++r)
        if (m[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      std::swap(m[static_cast<size_t>(k)], m[static_cast<size_t>(swap)]);
      sign = -sign;
    }
    for (int r = k + 1; r < dim; ++r) {
      for (int c = k + 1; c < dim; ++c) {
        auto& cell = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        cell = m[static_cast<size_t>(k)][static_cast<size_t>(k)] * cell -
               m[static_cast<size_t>(r)][static_cast<size_t>(k)] * m[static_cast<size_t>(k)][static_cast<size_t>(c)];
        mpz_divexact(cell.get_mpz_t(), cell.get_mpz_t(), prev.get_mpz_t());
      }
      m[static_cast<size_t>(r)][static_cast<size_t>(k)] = 0;
    }
    prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return sign * m[static_cast<size_t>(dim - 1)][static_cast<size_t>(dim - 1)];
}

mpz_class formal_resultant(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  const int m = static_cast<int>(a.size()) - 1;
  const int n = static_cast<int>(b.size()) - 1;
  if (m < 0 || n < 0 || m + n < 1) throw std::invalid_argument("formal_resultant: degrees too small");
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), a[0].get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  const int dim = m + n;
  std::vector<std::vector<mpz_class>> syl(static_cast<size_t>(dim),
                                          std::vector<mpz_class>(static_cast<size_t>(dim), mpz_class(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) syl[static_cast<size_t>(r)][static_cast<size_t>(r + (m - i))] = a[static_cast<size_t>(i)];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i)
      syl[static_cast<size_t>(n + r)][static_cast<size_t>(r + (n - i))] = b[static_cast<size_t>(i)];
  return determinant(std::move(syl));
}

}  // namespace oddjac::intpoly

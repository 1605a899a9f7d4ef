#include "oddjac/realroots.hpp"

#include <cassert>
#include <stdexcept>

namespace oddjac::realroots {

namespace {

void strip(IPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const IPoly& f) { return static_cast<int>(f.size()) - 1; }

IPoly derivative(const IPoly& f) {
  IPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(static_cast<long>(i) * f[i]);
  strip(d);
  return d;
}

// Divide out the gcd of the coefficients (kept positive), preserving signs.
void primitive(IPoly& f) {
  mpz_class g = 0;
  for (const mpz_class& c : f) g = gcd(g, c);
  if (g > 1)
    for (mpz_class& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Pseudo-remainder: r with lc(b)^(deg a - deg b + 1) * a = q*b + r.
IPoly pseudo_rem(const IPoly& a, const IPoly& b, const mpz_class& lcb, int delta) {
  IPoly r = a;
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), lcb.get_mpz_t(), static_cast<unsigned long>(delta));
  for (mpz_class& c : r) c *= scale;
  while (deg(r) >= deg(b)) {
    int k = deg(r) - deg(b);
    mpz_class coef = r.back() / lcb;  // exact by construction of the scaling
    for (int i = 0; i <= deg(b); ++i) r[static_cast<size_t>(k + i)] -= coef * b[static_cast<size_t>(i)];
    // The leading term cancels exactly; strip it (and any new zeros).
    strip(r);
    if (r.empty()) break;
  }
  return r;
}

// Signed remainder chain of (f, f') with positive-constant normalization, so
// each element is a positive multiple of the textbook Sturm chain entry.
std::vector<IPoly> sturm_chain(IPoly f) {
  strip(f);
  if (f.empty()) throw std::domain_error("Sturm chain of the zero polynomial");
  std::vector<IPoly> chain;
  primitive(f);
  chain.push_back(f);
  IPoly d = derivative(f);
  if (d.empty()) return chain;
  primitive(d);
  chain.push_back(d);
  while (true) {
    const IPoly& a = chain[chain.size() - 2];
    const IPoly& b = chain.back();
    if (deg(a) < deg(b)) {
      // Can only happen at the start if deg f == 0; guarded above.
      throw std::logic_error("degree order in Sturm chain");
    }
    int delta = deg(a) - deg(b) + 1;
    mpz_class lcb = b.back();
    IPoly r = pseudo_rem(a, b, lcb, delta);
    if (r.empty()) break;
    // The true remainder is r / lcb^delta; we need -remainder up to a
    // positive factor. If lcb^delta < 0 the sign of r is already flipped.
    bool multiplier_negative = (lcb < 0) && (delta % 2 == 1);
    if (!multiplier_negative)
      for (mpz_class& c : r) c = -c;
    primitive(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_mpz(const mpz_class& v) { return sgn(v); }

// Sign of p at +infinity / -infinity.
int sign_at_inf(const IPoly& p, bool positive_inf) {
  int s = sign_mpz(p.back());
  if (!positive_inf && deg(p) % 2 == 1) s = -s;
  return s;
}

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int sign_at(const IPoly& f, const mpq_class& x) {
  // Evaluate the homogenized form at (num, den): sum f_i num^i den^(n-i).
  IPoly g = f;
  strip(g);
  if (g.empty()) return 0;
  const mpz_class num = x.get_num(), den = x.get_den();
  mpz_class acc = 0, dpow = 1;
  // Horner in num with a running power of den.
  for (size_t i = g.size(); i-- > 0;) {
    acc = acc * num + g[i] * dpow;
    if (i > 0) dpow *= den;
  }
  return sign_mpz(acc);
}

int distinct_real_roots(const IPoly& f) {
  IPoly g = f;
  strip(g);
  if (g.empty()) throw std::domain_error("root count of the zero polynomial");
  if (deg(g) == 0) return 0;
  auto chain = sturm_chain(g);
  std::vector<int> neg, pos;
  neg.reserve(chain.size());
  pos.reserve(chain.size());
  for (const IPoly& p : chain) {
    neg.push_back(sign_at_inf(p, false));
    pos.push_back(sign_at_inf(p, true));
  }
  return variations(neg) - variations(pos);
}

int distinct_real_roots_in(const IPoly& f, const mpq_class& a, const mpq_class& b) {
  IPoly g = f;
  strip(g);
  if (g.empty()) throw std::domain_error("root count of the zero polynomial");
  if (!(a < b)) throw std::invalid_argument("empty interval");
  if (deg(g) == 0) return 0;
  if (sign_at(g, a) == 0 || sign_at(g, b) == 0)
    throw std::invalid_argument("interval endpoint is a root");
  auto chain = sturm_chain(g);
  std::vector<int> sa, sb;
  for (const IPoly& p : chain) {
    sa.push_back(sign_at(p, a));
    sb.push_back(sign_at(p, b));
  }
  return variations(sa) - variations(sb);
}

bool negative_definite(const IPoly& f) {
  IPoly g = f;
  strip(g);
  if (g.empty()) return false;  // the zero polynomial is nowhere negative
  if (deg(g) == 0) return g[0] < 0;
  if (deg(g) % 2 == 1) return false;  // odd degree always takes both signs
  if (g.back() > 0) return false;
  if (distinct_real_roots(g) > 0) return false;
  // No real roots: the sign is constant; test at 0.
  return g[0] < 0;
}

}  // namespace oddjac::realroots

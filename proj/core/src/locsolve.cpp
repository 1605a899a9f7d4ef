#include "oddjac/locsolve.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "oddjac/fq.hpp"
#include "oddjac/intfactor.hpp"
#include "oddjac/intpoly.hpp"
#include "oddjac/realroots.hpp"
#include "oddjac/rng.hpp"

namespace oddjac::locsolve {

namespace {

using qp::LocalField;
using Element = qp::LocalField::Element;

long vp_exact(const mpz_class& n, Limb p) {
  assert(n != 0);
  mpz_class tmp, pz(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

// Resultant of the two partial derivatives of F(x,z) = sum a_i x^i z^{n-i},
// an integer polynomial in the a_i; the discriminant is this divided by
// n^{n-2} (with a sign).
mpz_class partials_resultant(const std::vector<mpz_class>& a, int n) {
  std::vector<mpz_class> fx(static_cast<size_t>(n)), fz(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    fx[static_cast<size_t>(i)] = mpz_class(i + 1) * a[static_cast<size_t>(i + 1)];
    fz[static_cast<size_t>(i)] = mpz_class(n - i) * a[static_cast<size_t>(i)];
  }
  return intpoly::formal_resultant(fx, fz);
}

mpz_class disc_from_coeffs(const std::vector<mpz_class>& a, int n) {
  mpz_class res = partials_resultant(a, n);
  mpz_class nn;
  mpz_ui_pow_ui(nn.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n - 2));
  if (!mpz_divisible_p(res.get_mpz_t(), nn.get_mpz_t()))
    throw std::logic_error("discriminant: resultant not divisible by n^(n-2)");
  mpz_class d;
  mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), nn.get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) d = -d;
  return d;
}

// Thrown inside the residue-disc search when the working precision cannot
// certify a decision; the driver raises precision (global mode) or reports
// NeedsPrecision (local-sampling mode).
struct PrecisionObstacle {};

struct SearchCx {
  const LocalField& L;
  int budget;                       // refinement depth bound
  long e2;                          // v_L(2)
  bool odd_p;
  mpz_class q;                      // residue field order
  const LocalField::Poly* chart = nullptr;  // unscaled chart polynomial F
  std::uint64_t scan_lane = 0;      // rng lane for large-field residue scans
  std::uint64_t nodes = 0;          // explored nodes (loud runaway guard)
};

// Random residue index; only used to *locate* a candidate in a huge residue
// field, never to decide (every hit is verified exactly afterwards).
mpz_class random_index_below(const mpz_class& q, std::uint64_t lane, std::uint64_t& block) {
  const size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2) + 64;
  mpz_class acc = 0;
  for (size_t got = 0; got < bits; got += 64) {
    acc <<= 64;
    acc += mpz_class(static_cast<unsigned long>(rng::word(0x5ca11ab1ed0ddacULL, lane, 1, block++)));
  }
  return acc % q;
}

// g(r + pi t) from g(t): Taylor shift by r, then scale t by pi.
LocalField::Poly child_poly(const LocalField& L, const LocalField::Poly& g, const Element& r) {
  LocalField::Poly h = g;
  const int n = static_cast<int>(h.size()) - 1;
  for (int i = 0; i < n; ++i)
    for (int m = n - 1; m >= i; --m)
      h[static_cast<size_t>(m)] = L.add(h[static_cast<size_t>(m)], L.mul(h[static_cast<size_t>(m + 1)], r));
  for (int j = 1; j <= n; ++j) h[static_cast<size_t>(j)] = L.shift(h[static_cast<size_t>(j)], j);
  return h;
}

// Decide whether some t in O_L makes g(t) a square (possibly zero), where g
// records f restricted to the disc {center + pi^k s}. Returns the certified
// point (x, y) in the chart coordinate, or nullopt when the whole disc is
// refuted. Only certified decisions are made:
//  - stability: if every nonconstant coefficient has valuation at least
//    v(g_0) + 2 v_L(2) + 1, then g(t)/g(0) is a square of a 1-unit for all t,
//    so the disc is decided by is_square(g(0));
//  - Newton: g(t) = F(center + pi^k t) for the unscaled chart polynomial F,
//    so v(F(center)) = v(g_0) and v(F'(center)) = v(g_1) - k. When
//    v(F(center)) > 2 v(F'(center)), F has a root near the center (a point
//    with y = 0). The test must use the chart coordinate: the same condition
//    on the scaled coefficients themselves can fail at every depth near a
//    root whose derivative value is a nonunit;
//  - otherwise split into residue classes. For odd p the classes where the
//    normalized reduction Gbar is nonzero are stable one level down, so they
//    are decided at the residue-field level (in bulk, without enumerating
//    large fields); only the roots of Gbar recurse.
// The depth budget is a generous bound on when a rule must fire at exact
// coefficients: at any center, min(v(f), v(f')) is bounded by
// v_L(Res(F_x, F_z)), so stability or Newton fires within
// 2 v_L(Res) + 2 v_L(2) + O(1) levels. Hitting the budget therefore only
// happens when precision (not depth) is the obstacle.
std::optional<std::pair<Element, Element>> search_disc(SearchCx& cx, const LocalField::Poly& g,
                                                       const Element& center, int k) {
  const LocalField& L = cx.L;
  if (++cx.nodes > (1ULL << 22))
    throw std::logic_error("point search: node budget exceeded (internal inconsistency)");
  const int n = static_cast<int>(g.size()) - 1;

  std::vector<qp::Val> vals(g.size());
  for (size_t j = 0; j < g.size(); ++j) vals[j] = L.valuation(g[j]);
  const qp::Val v0 = vals[0];
  long tail = LONG_MAX;
  for (size_t j = 1; j < g.size(); ++j) tail = std::min(tail, vals[j].v);

  // Stability.
  if (v0.finite && tail >= v0.v + 2 * cx.e2 + 1) {
    auto sq = L.is_square(g[0]);
    if (sq.verdict == qp::SquareVerdict::NeedsPrecision) throw PrecisionObstacle{};
    if (sq.verdict == qp::SquareVerdict::Yes) return std::make_pair(center, *sq.sqrt);
    return std::nullopt;
  }
  // Newton in the chart coordinate: v(F(center)) exceeds 2 v(F'(center))
  // (v0.v is a certified lower bound even when not finite), so F has a root
  // near the center. The root stays integral (and, starting from a center in
  // the maximal ideal, stays in it), since it is within |F'(center)| of the
  // center.
  if (vals[1].finite && v0.v > 2 * (vals[1].v - k)) {
    auto root = L.hensel_root(*cx.chart, center);
    if (!root) throw std::logic_error("point search: certified Newton step failed");
    return std::make_pair(*root, L.zero(root->precision));
  }

  if (k >= cx.budget) throw PrecisionObstacle{};

  // Refine into residue classes. Normalize by the minimal coefficient
  // valuation vstar, which must be certified by a finite coefficient.
  long vstar = LONG_MAX;
  for (const auto& v : vals) vstar = std::min(vstar, v.v);
  bool certified = false;
  for (const auto& v : vals)
    if (v.finite && v.v == vstar) certified = true;
  if (!certified) throw PrecisionObstacle{};
  for (const auto& c : g)
    if (c.precision <= vstar) throw PrecisionObstacle{};

  const fq::Field& kappa = L.residue_field();
  fq::Poly gbar;
  gbar.c.reserve(g.size());
  for (const auto& c : g) gbar.c.push_back(L.residue(L.shift(c, -vstar)));
  fq::poly_normalize(kappa, gbar);
  assert(!gbar.is_zero());

  // Residue classes where Gbar vanishes must be refined.
  std::vector<fq::Elem> roots = fq::poly_roots(kappa, gbar);

  // Residue classes where Gbar is a nonzero square (and vstar is even) give a
  // point one level down; classes where it is a nonzero nonsquare are
  // refuted. For odd p this decides all non-root classes in bulk.
  if (cx.odd_p && vstar % 2 == 0) {
    auto sqf = fq::squarefree_decomposition(kappa, gbar);
    bool all_even = true;
    for (const auto& part : sqf)
      if (part.multiplicity % 2 != 0) all_even = false;
    const bool unit_square = gbar.deg() >= 0 && kappa.is_square(fq::poly_lc(gbar));

    std::optional<fq::Elem> good;  // residue with Gbar nonzero square
    if (all_even && !unit_square) {
      // Gbar = nonsquare * square: no non-root class can work.
    } else if (all_even && unit_square) {
      // Gbar is a nonzero square wherever it does not vanish.
      mpz_class limit = std::min(cx.q, mpz_class(gbar.deg() + 2));
      for (mpz_class idx = 0; idx < limit; ++idx) {
        fq::Elem r = kappa.elem_at(idx);
        if (!kappa.is_zero(fq::poly_eval(kappa, gbar, r))) {
          good = r;
          break;
        }
      }
    } else {
      // Some odd multiplicity: scan for a residue with nonzero square value.
      // Complete scan for small fields; for large fields a point count on
      // w^2 = Gbar(t) guarantees many such residues exist, so a bounded
      // randomized scan locates one (each candidate is verified exactly).
      mpz_class prefix = std::min(cx.q, mpz_class(4096));
      for (mpz_class idx = 0; idx < prefix && !good; ++idx) {
        fq::Elem r = kappa.elem_at(idx);
        fq::Elem val = fq::poly_eval(kappa, gbar, r);
        if (!kappa.is_zero(val) && kappa.is_square(val)) good = r;
      }
      if (!good && cx.q > 4096) {
        std::uint64_t block = 0;
        const std::uint64_t lane = cx.scan_lane++;
        for (int tries = 0; tries < 100000 && !good; ++tries) {
          fq::Elem r = kappa.elem_at(random_index_below(cx.q, lane, block));
          fq::Elem val = fq::poly_eval(kappa, gbar, r);
          if (!kappa.is_zero(val) && kappa.is_square(val)) good = r;
        }
        if (!good)
          throw std::logic_error(
              "point search: residue scan exhausted although a square value is guaranteed");
      }
    }

    if (good) {
      Element r = L.lift(*good);
      Element val = L.eval(g, r);
      auto sq = L.is_square(val);
      if (sq.verdict == qp::SquareVerdict::NeedsPrecision) throw PrecisionObstacle{};
      if (sq.verdict != qp::SquareVerdict::Yes)
        throw std::logic_error("point search: residue-level square did not lift");
      Element x = L.add(center, L.shift(r, k));
      return std::make_pair(x, *sq.sqrt);
    }

    for (const fq::Elem& rbar : roots) {
      Element r = L.lift(rbar);
      auto hit = search_disc(cx, child_poly(L, g, r), L.add(center, L.shift(r, k)), k + 1);
      if (hit) return hit;
    }
    return std::nullopt;
  }

  if (cx.odd_p) {
    // vstar odd: non-root classes have values of odd valuation, refuted.
    for (const fq::Elem& rbar : roots) {
      Element r = L.lift(rbar);
      auto hit = search_disc(cx, child_poly(L, g, r), L.add(center, L.shift(r, k)), k + 1);
      if (hit) return hit;
    }
    return std::nullopt;
  }

  // p = 2: the residue field is tiny; recurse into every class.
  for (mpz_class idx = 0; idx < cx.q; ++idx) {
    Element r = L.lift(kappa.elem_at(idx));
    auto hit = search_disc(cx, child_poly(L, g, r), L.add(center, L.shift(r, k)), k + 1);
    if (hit) return hit;
  }
  return std::nullopt;
}

void verify_witness(const Curve& c, const PointWitness& w) {
  const LocalField& L = w.field;
  const int n = c.n();
  if (w.chart == 2 && L.valuation(w.coord).v < 1)
    throw std::logic_error("witness verification: chart-2 coordinate is a unit");
  const int cp = c.local_mode
                     ? std::min(L.precision(), static_cast<int>(L.e()) * c.locprec)
                     : L.precision();
  LocalField::Poly f;
  f.reserve(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j)
    f.push_back(L.from_mpz(c.a[static_cast<size_t>(w.chart == 1 ? j : n - j)], cp));
  Element val = L.eval(f, w.coord);
  Element y2 = L.mul(w.y, w.y);
  if (!L.equal_at_precision(y2, val))
    throw std::logic_error("witness verification: y^2 != f at the reported point");
}

const std::vector<LocalField>& enumerated_fields_cached(Limb p, unsigned max_degree,
                                                        int precision) {
  static std::mutex mu;
  static std::map<std::tuple<Limb, unsigned, int>, std::vector<LocalField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, max_degree, precision);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, qp::enumerate_odd_extensions(p, max_degree, precision)).first;
  return it->second;
}

constexpr int kFieldSeedPrecision = 12;

std::string place_name(Limb p) { return std::to_string(static_cast<unsigned long long>(p)); }

}  // namespace

Curve make_curve(int genus, std::vector<mpz_class> coeffs) {
  if (genus < 0) throw std::invalid_argument("make_curve: genus must be >= 0");
  if (static_cast<int>(coeffs.size()) != 2 * genus + 3)
    throw std::invalid_argument("make_curve: expected 2*genus + 3 coefficients");
  Curve c;
  c.genus = genus;
  c.a = std::move(coeffs);
  c.disc_ = disc_from_coeffs(c.a, c.n());
  if (*c.disc_ == 0) throw std::invalid_argument("make_curve: zero discriminant (singular model)");
  return c;
}

std::optional<Curve> try_make_local_curve(int genus, std::vector<mpz_class> coeffs, Limb p,
                                          int prec) {
  if (genus < 0) throw std::invalid_argument("try_make_local_curve: genus must be >= 0");
  if (prec < 1) throw std::invalid_argument("try_make_local_curve: precision must be >= 1");
  if (static_cast<int>(coeffs.size()) != 2 * genus + 3)
    throw std::invalid_argument("try_make_local_curve: expected 2*genus + 3 coefficients");
  Curve c;
  c.genus = genus;
  c.local_mode = true;
  c.locp = p;
  c.locprec = prec;
  c.a = std::move(coeffs);
  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(prec));
  for (auto& x : c.a) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  if (!disc_valuation(c, p)) return std::nullopt;
  return c;
}

const mpz_class& discriminant(const Curve& c) {
  if (c.local_mode)
    throw std::invalid_argument("discriminant: exact value undefined for truncated coefficients");
  if (!c.disc_) c.disc_ = disc_from_coeffs(c.a, c.n());
  return *c.disc_;
}

std::optional<long> disc_valuation(const Curve& c, Limb p) {
  if (!c.local_mode) {
    const mpz_class& d = discriminant(c);
    return vp_exact(d, p);
  }
  if (p != c.locp)
    throw std::invalid_argument("disc_valuation: prime differs from the curve's sampling prime");
  // The partials resultant has integer polynomial coefficients in the a_i, so
  // truncating the a_i mod p^N only moves it by a multiple of p^N: its
  // valuation is certified whenever it is < N.
  const int n = c.n();
  mpz_class res = partials_resultant(c.a, n);
  if (res == 0) return std::nullopt;
  long v = vp_exact(res, p);
  if (v >= c.locprec) return std::nullopt;
  long vn = (static_cast<unsigned long>(n) % p == 0) ? vp_exact(mpz_class(n), p) : 0;
  return v - static_cast<long>(n - 2) * vn;
}

PointSearchResult has_point_over(const Curve& c, const qp::LocalField& Lin, int precision_cap) {
  const Limb p = Lin.p();
  if (c.local_mode && c.locp != p)
    throw std::invalid_argument("has_point_over: field prime differs from the curve's prime");
  auto vdp = disc_valuation(c, p);
  if (!vdp) return {PointAnswer::NeedsPrecision, std::nullopt};

  const int n = c.n();
  const long e = Lin.e();
  const long e2 = Lin.val_of_2();
  const long vLd = e * *vdp;
  const long vLn =
      (static_cast<unsigned long>(n) % p == 0) ? e * vp_exact(mpz_class(n), p) : 0;
  const long res_bound = vLd + static_cast<long>(n - 2) * vLn;  // v_L(Res(F_x, F_z))
  const int budget = static_cast<int>(2 * res_bound + 2 * e2 + 4);
  const int maxavail = c.local_mode ? static_cast<int>(e) * c.locprec : INT_MAX / 2;

  int prec = static_cast<int>(std::min<long>(
      std::max<long>({static_cast<long>(Lin.precision()), budget + vLd + 8, 16L}),
      static_cast<long>(maxavail)));
  if (prec < 2) return {PointAnswer::NeedsPrecision, std::nullopt};

  for (;;) {
    LocalField L = Lin.with_precision(prec);
    const int cp = std::min(prec, maxavail);
    try {
      SearchCx cx{L, budget, e2, p != 2, L.residue_field().order()};

      LocalField::Poly g1;
      g1.reserve(static_cast<size_t>(n) + 1);
      for (int j = 0; j <= n; ++j) g1.push_back(L.from_mpz(c.a[static_cast<size_t>(j)], cp));
      cx.chart = &g1;
      if (auto hit = search_disc(cx, g1, L.zero(cp), 0)) {
        PointWitness w{L, 1, hit->first, hit->second};
        verify_witness(c, w);
        return {PointAnswer::Yes, std::move(w)};
      }

      // The search for chart 2 covers the maximal ideal: the initial child
      // polynomial is f*(pi t), while cx.chart keeps the unscaled f*.
      LocalField::Poly f2, g2;
      f2.reserve(static_cast<size_t>(n) + 1);
      g2.reserve(static_cast<size_t>(n) + 1);
      for (int j = 0; j <= n; ++j) {
        f2.push_back(L.from_mpz(c.a[static_cast<size_t>(n - j)], cp));
        g2.push_back(L.shift(f2.back(), j));
      }
      cx.chart = &f2;
      if (auto hit = search_disc(cx, g2, L.zero(cp), 1)) {
        PointWitness w{L, 2, hit->first, hit->second};
        verify_witness(c, w);
        return {PointAnswer::Yes, std::move(w)};
      }

      return {PointAnswer::No, std::nullopt};
    } catch (const PrecisionObstacle&) {
      if (c.local_mode) return {PointAnswer::NeedsPrecision, std::nullopt};
      if (prec >= precision_cap)
        throw std::logic_error("has_point_over: precision cap reached without a certified decision");
      prec = std::min(prec * 2, precision_cap);
    }
  }
}

std::optional<ModPCertificate> mod_p_deficiency_certificate(const Curve& c, Limb p) {
  if (p == 2) return std::nullopt;
  if (c.genus % 2 != 0) return std::nullopt;
  if (c.local_mode) {
    if (c.locp != p)
      throw std::invalid_argument(
          "mod_p_deficiency_certificate: prime differs from the curve's sampling prime");
    if (c.locprec < 2) return std::nullopt;  // the decomposition lives mod p^2
  }
  const int n = c.n();
  fq::Field F(p);
  fq::Poly fbar = fq::poly_from_mpz(F, c.a);

  mpz_class u;
  std::vector<mpz_class> h;
  fq::Poly hbar;
  if (fbar.is_zero()) {
    // f = 0 mod p: take h = 0 and any nonsquare unit u.
    Limb r = 2;
    while (F.is_square(F.from_uint(r))) ++r;
    u = static_cast<unsigned long>(r);
    hbar = fq::poly_zero();
  } else {
    auto screen = fq::reduction_screen(F, fbar, static_cast<unsigned>(n));
    if (screen.verdict != fq::ScreenVerdict::NonsquareTimesSquare) return std::nullopt;
    u = static_cast<unsigned long>(screen.unit[0]);
    hbar = screen.h;
    h.reserve(hbar.c.size());
    for (const fq::Elem& coeff : hbar.c) h.emplace_back(static_cast<unsigned long>(coeff[0]));
  }

  // j = (f - u h^2) / p, exact over Z by construction.
  std::vector<mpz_class> j(static_cast<size_t>(n) + 1, mpz_class(0));
  std::vector<mpz_class> h2(h.empty() ? 1 : 2 * h.size() - 1, mpz_class(0));
  for (size_t s = 0; s < h.size(); ++s)
    for (size_t t = 0; t < h.size(); ++t) h2[s + t] += h[s] * h[t];
  for (size_t i = 0; i <= static_cast<size_t>(n); ++i) {
    mpz_class num = c.a[i] - (i < h2.size() ? u * h2[i] : mpz_class(0));
    if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p)))
      throw std::logic_error("mod_p_deficiency_certificate: f - u h^2 not divisible by p");
    mpz_divexact_ui(j[i].get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(p));
  }
  fq::Poly jbar = fq::poly_from_mpz(F, j);

  if (hbar.is_zero() && jbar.is_zero()) return std::nullopt;  // f = 0 mod p^2: rescale instead
  if (fq::odd_degree_common_factor(F, hbar, static_cast<unsigned>(c.genus + 1), jbar,
                                   static_cast<unsigned>(n)))
    return std::nullopt;
  return ModPCertificate{p, u, std::move(h), std::move(j)};
}

DeficiencyVerdict deficient_at_finite(const Curve& c, Limb p, const SearchOptions& opt) {
  if (p < 2 || !intfactor::is_probable_prime(mpz_class(static_cast<unsigned long>(p))))
    throw std::invalid_argument("deficient_at_finite: place must be a prime");
  DeficiencyVerdict out;
  out.place = place_name(p);

  if (c.genus % 2 != 0) {
    out.decision = Decision::NotDeficient;
    out.why = Why::OddGenusPencil;
    out.detail = "odd genus: the degree-2 pencil yields a divisor class of degree g-1";
    return out;
  }

  if (opt.use_screens && !c.local_mode && c.a[0] >= 0 &&
      mpz_perfect_square_p(c.a[0].get_mpz_t())) {
    out.decision = Decision::NotDeficient;
    out.why = Why::IntegerSquareConstant;
    out.detail = "constant coefficient is a square in Z: rational point at x = 0";
    return out;
  }

  if (opt.use_screens && p != 2) {
    fq::Field F(p);
    fq::Poly fbar = fq::poly_from_mpz(F, c.a);
    if (!fbar.is_zero()) {
      auto screen = fq::reduction_screen(F, fbar, static_cast<unsigned>(c.n()));
      if (screen.verdict == fq::ScreenVerdict::NotDeficientCertain) {
        out.decision = Decision::NotDeficient;
        out.why = Why::ResidueScreen;
        out.detail = "mod-p shape is not nonsquare*square: unramified odd-degree points exist";
        return out;
      }
    }
    if (auto dv = disc_valuation(c, p)) {
      if (*dv < c.genus + 1) {
        out.decision = Decision::NotDeficient;
        out.why = Why::DiscValuationBound;
        out.detail = "v_p(disc) < g+1 rules out deficiency at odd p";
        return out;
      }
    }
    if (auto cert = mod_p_deficiency_certificate(c, p)) {
      out.decision = Decision::Deficient;
      out.why = Why::CertifiedDecomposition;
      out.certificate = std::move(cert);
      out.detail = "f = u h^2 + p j with u a nonsquare unit and no common odd-degree factor";
      return out;
    }
  }

  // Complete decision: point search over every extension of odd degree <= g+1.
  const unsigned maxdeg = static_cast<unsigned>(c.genus + 1);
  const std::vector<LocalField>& fields =
      opt.dedupe_extensions ? qp::distinct_odd_extensions_cached(p, maxdeg, kFieldSeedPrecision)
                            : enumerated_fields_cached(p, maxdeg, kFieldSeedPrecision);
  bool wall = false;
  for (const LocalField& L : fields) {
    PointSearchResult r = has_point_over(c, L, opt.precision_cap);
    if (r.answer == PointAnswer::Yes) {
      out.decision = Decision::NotDeficient;
      out.why = Why::PointFound;
      out.witness = std::move(r.witness);
      out.detail = "point over " + L.describe();
      return out;
    }
    if (r.answer == PointAnswer::NeedsPrecision) {
      wall = true;
      out.searched_fields.push_back(L.describe() + " [precision wall]");
    } else {
      out.searched_fields.push_back(L.describe());
    }
  }
  if (wall) {
    out.decision = Decision::Undecided;
    out.why = Why::PrecisionWall;
    out.detail = "no point found, but some extension could not be decided at this precision";
    return out;
  }
  out.decision = Decision::Deficient;
  out.why = Why::ExtensionExhaustion;
  out.detail = "no point over any extension of odd degree <= g+1";
  return out;
}

DeficiencyVerdict deficient_at_infinity(const Curve& c) {
  if (c.local_mode)
    throw std::invalid_argument("deficient_at_infinity: global-mode curves only");
  DeficiencyVerdict out;
  out.place = "inf";
  if (c.genus % 2 != 0) {
    out.decision = Decision::NotDeficient;
    out.why = Why::OddGenusPencil;
    out.detail = "odd genus: the degree-2 pencil yields a divisor class of degree g-1";
    return out;
  }
  if (realroots::negative_definite(c.a)) {
    out.decision = Decision::Deficient;
    out.why = Why::NegativeDefinite;
    out.detail = "f < 0 on all of R: no real point";
  } else {
    out.decision = Decision::NotDeficient;
    out.why = Why::RealPoint;
    out.detail = "f attains a nonnegative real value: real point exists";
  }
  return out;
}

}  // namespace oddjac::locsolve

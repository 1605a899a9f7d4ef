#include "oddjac/density.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "oddjac/realroots.hpp"
#include "oddjac/rng.hpp"

namespace oddjac::density {

namespace {

using realroots::IPoly;

constexpr std::uint64_t kRealLane = std::uint64_t{1} << 20;
constexpr std::uint64_t kRhoLane = std::uint64_t{1} << 21;

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpq_class qpow(Limb p, unsigned long e) {  // p^{-e}
  return mpq_class(1, pow_mpz(mpz_class(static_cast<unsigned long>(p)), e));
}

// --- real-place sampling -----------------------------------------------------

// Coefficient numerators are drawn uniformly from the integers of
// [-2^53, 2^53]; the sampled coefficient is numerator / 2^53, a dyadic
// rational of [-1,1] with 53 fractional bits. Root counting and sign tests
// are invariant under clearing the common denominator, so the estimators
// work on the integer numerator vector directly.
mpz_class dyadic_numerator(std::uint64_t seed, std::uint64_t idx, int j) {
  std::uint64_t block = 0;
  const std::uint64_t span = (std::uint64_t{1} << 54) + 1;
  std::uint64_t r = rng::uniform_below(span, seed, idx, kRealLane + static_cast<std::uint64_t>(j),
                                       block);
  return mpz_class(static_cast<unsigned long>(r)) - (mpz_class(1) << 53);
}

IPoly draw_real_poly(int ncoeffs, std::uint64_t seed, std::uint64_t idx) {
  IPoly f(ncoeffs);
  for (int j = 0; j < ncoeffs; ++j) f[j] = dyadic_numerator(seed, idx, j);
  return f;
}

// Exact signs of f at a few cheap rational points: f(0), f(+-1), f(+-2) and
// the numerators of f(+-1/2) (values scaled by 2^deg). Returns {has_zero,
// has_positive, has_negative}.
struct SignProbe {
  bool zero = false, pos = false, neg = false;
  void add(const mpz_class& v) {
    int s = sgn(v);
    if (s == 0) zero = true;
    else if (s > 0) pos = true;
    else neg = true;
  }
};

SignProbe probe_signs(const IPoly& f) {
  SignProbe s;
  const int d = static_cast<int>(f.size()) - 1;
  mpz_class p1 = 0, m1 = 0, p2 = 0, m2 = 0, ph = 0, mh = 0;
  for (int j = d; j >= 0; --j) {
    p1 += f[j];
    m1 += (j % 2 ? -f[j] : f[j]);
    p2 = 2 * p2;   // Horner for f(2) and f(-2)
    m2 = -2 * m2;
    p2 += f[j];
    m2 += f[j];
    // 2^d f(1/2) = sum f[j] 2^{d-j}; likewise for -1/2.
    mpz_class sc = f[j] << static_cast<unsigned>(d - j);
    ph += sc;
    mh += (j % 2 ? -sc : sc);
  }
  s.add(f[0]);
  s.add(p1);
  s.add(m1);
  s.add(p2);
  s.add(m2);
  s.add(ph);
  s.add(mh);
  return s;
}

bool poly_is_zero(const IPoly& f) {
  for (const auto& c : f)
    if (c != 0) return false;
  return true;
}

Estimate finish_bernoulli(std::uint64_t hits, std::uint64_t n, std::uint64_t undecided,
                          std::uint64_t seed, std::string config, double tolerance) {
  Estimate e;
  e.n_samples = n;
  e.n_undecided = undecided;
  e.seed = seed;
  const std::uint64_t decided = n - undecided;
  if (decided > 0) {
    e.value = static_cast<double>(hits) / static_cast<double>(decided);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(decided));
  }
  e.flagged = n > 0 && static_cast<double>(undecided) / static_cast<double>(n) > tolerance;
  e.config = std::move(config);
  return e;
}

// --- interval arithmetic (double endpoints, outward rounded) -----------------

// One-ulp outward nudges; a floating-point product or sum that is exactly 0
// came from an exact-0 operand here (the quantities involved are far from the
// underflow range), so 0 endpoints stay exact.
double down(double x) {
  return x == 0.0 ? 0.0 : std::nextafter(x, -std::numeric_limits<double>::infinity());
}
double up(double x) {
  return x == 0.0 ? 0.0 : std::nextafter(x, std::numeric_limits<double>::infinity());
}
double dbl_down(const mpq_class& q) { return down(mpq_get_d(q.get_mpq_t())); }
double dbl_up(const mpq_class& q) { return up(mpq_get_d(q.get_mpq_t())); }

Interval clamp01(Interval a) {
  a.lo = std::max(0.0, a.lo);
  a.hi = std::min(1.0, std::max(a.hi, a.lo));
  return a;
}

Interval imul(const Interval& a, const Interval& b) {
  if (a.lo == 1.0 && a.hi == 1.0) return b;  // exact identity factors
  if (b.lo == 1.0 && b.hi == 1.0) return a;
  double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  double lo = c[0], hi = c[0];
  for (double v : c) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {down(lo), up(hi)};
}

// 1 - k x, monotone decreasing in x; 1 - 0 stays exact.
Interval ione_minus(const Interval& a, double k) {
  const double thi = k * a.hi, tlo = k * a.lo;
  return {thi == 0.0 ? 1.0 : down(1.0 - thi), tlo == 0.0 ? 1.0 : up(1.0 - tlo)};
}

Interval estimate_interval(const Estimate& e) {
  return clamp01({down(e.value - 3.0 * e.std_error), up(e.value + 3.0 * e.std_error)});
}

Interval bounds_interval(const BoundPair& b) { return {dbl_down(b.lower), dbl_up(b.upper)}; }

// sum over primes p > P of the general upper bound (1+p^{-(g+2)})/(2 p^{g+1});
// the integrand is decreasing, so the sum over integers beyond P is at most
// the integral from P: 1/(2g P^g) + 1/(2(2g+1) P^{2g+1}).
mpq_class tail_upper_sum(int genus, Limb P) {
  mpz_class Pz(static_cast<unsigned long>(P));
  const unsigned g = static_cast<unsigned>(genus);
  return mpq_class(1, 2 * genus * pow_mpz(Pz, g)) +
         mpq_class(1, 2 * (2 * genus + 1) * pow_mpz(Pz, 2 * g + 1));
}

bool is_prime_u(Limb n) {
  if (n < 2) return false;
  for (Limb d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string fmt_config(const std::string& head, std::initializer_list<std::string> kv) {
  std::ostringstream os;
  os << head;
  for (const auto& s : kv) os << ' ' << s;
  return os.str();
}

std::string kv(const char* k, std::uint64_t v) {
  return std::string(k) + "=" + std::to_string(v);
}

}  // namespace

// --- real place ---------------------------------------------------------------

Estimate estimate_s_inf(int genus, std::uint64_t n, std::uint64_t seed) {
  if (genus < 0 || n < 1) throw std::invalid_argument("estimate_s_inf: need genus >= 0, n >= 1");
  std::string config = fmt_config(
      "estimate_s_inf", {kv("genus", genus), kv("n", n), "resolution=2^-53", "decision=sturm"});
  if (genus % 2 == 1) {
    Estimate e;
    e.seed = seed;
    e.config = config + " odd-genus-exact-zero";
    return e;  // a real point always exists in odd genus: density exactly 0
  }
  const int ncoeffs = 2 * genus + 3;
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    IPoly f = draw_real_poly(ncoeffs, seed, idx);
    SignProbe s = probe_signs(f);
    if (s.zero || s.pos) continue;  // some value >= 0: a real point exists
    if (realroots::negative_definite(f)) ++hits;
  }
  return finish_bernoulli(hits, n, 0, seed, config, 1e-4);
}

Estimate estimate_q_n(int degree, std::uint64_t n, std::uint64_t seed) {
  if (degree < 0 || n < 1) throw std::invalid_argument("estimate_q_n: need degree >= 0, n >= 1");
  const int ncoeffs = degree + 1;
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    IPoly f = draw_real_poly(ncoeffs, seed, idx);
    if (poly_is_zero(f)) continue;  // vanishes everywhere: has real roots
    SignProbe s = probe_signs(f);
    if (s.zero || (s.pos && s.neg)) continue;  // sign change: a root exists
    if (realroots::distinct_real_roots(f) == 0) ++hits;
  }
  return finish_bernoulli(
      hits, n, 0, seed,
      fmt_config("estimate_q_n", {kv("degree", degree), kv("n", n), "resolution=2^-53"}), 1e-4);
}

// --- finite places --------------------------------------------------------------

namespace {

// Digit k of the p-adic coefficient stream (seed, idx, j): a fixed function
// of its lane, so streams extend lazily and replay exactly.
Limb padic_digit(Limb p, std::uint64_t seed, std::uint64_t idx, int j, int k) {
  const std::uint64_t limit = p * (~std::uint64_t{0} / p);
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::uint64_t v = rng::word(seed, idx, static_cast<std::uint64_t>(j),
                                (static_cast<std::uint64_t>(k) << 8) | attempt);
    if (v < limit) return static_cast<Limb>(v % p);
  }
}

std::vector<mpz_class> padic_coeffs(int ncoeffs, Limb p, int prec, std::uint64_t seed,
                                    std::uint64_t idx) {
  std::vector<mpz_class> a(ncoeffs, mpz_class(0));
  const mpz_class pz(static_cast<unsigned long>(p));
  for (int j = 0; j < ncoeffs; ++j) {
    mpz_class scale = 1;
    for (int k = 0; k < prec; ++k) {
      a[j] += scale * mpz_class(static_cast<unsigned long>(padic_digit(p, seed, idx, j, k)));
      scale *= pz;
    }
  }
  return a;
}

}  // namespace

Estimate estimate_s_p(int genus, Limb p, std::uint64_t n, std::uint64_t seed,
                      const SamplingPolicy& policy) {
  if (genus < 0 || n < 1 || p < 2)
    throw std::invalid_argument("estimate_s_p: need genus >= 0, n >= 1, p >= 2");
  const int prec0 =
      policy.initial_precision > 0 ? policy.initial_precision : (p == 2 ? 24 : 6);
  if (prec0 > policy.precision_cap)
    throw std::invalid_argument("estimate_s_p: initial precision above the cap");
  std::string config = fmt_config(
      "estimate_s_p", {kv("genus", genus), kv("p", p), kv("n", n), kv("prec0", prec0),
                       kv("cap", policy.precision_cap), kv("dedupe", policy.dedupe_extensions)});
  if (genus % 2 == 1) {
    Estimate e;
    e.seed = seed;
    e.config = config + " odd-genus-exact-zero";
    return e;  // odd genus is never deficient: density exactly 0
  }
  locsolve::SearchOptions so;
  so.dedupe_extensions = policy.dedupe_extensions;
  const int ncoeffs = 2 * genus + 3;
  std::uint64_t deficient = 0, undecided = 0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    bool decided = false;
    for (int prec = prec0;;) {
      auto c = locsolve::try_make_local_curve(genus, padic_coeffs(ncoeffs, p, prec, seed, idx),
                                              p, prec);
      if (c) {
        auto v = locsolve::deficient_at_finite(*c, p, so);
        if (v.decision == locsolve::Decision::Deficient) {
          ++deficient;
          decided = true;
          break;
        }
        if (v.decision == locsolve::Decision::NotDeficient) {
          decided = true;
          break;
        }
        // precision wall: fall through and extend the digit streams
      }
      if (prec >= policy.precision_cap) break;
      prec = std::min(2 * prec, policy.precision_cap);
    }
    if (!decided) ++undecided;
  }
  return finish_bernoulli(deficient, n, undecided, seed, config, policy.undecided_tolerance);
}

// --- exact formulas --------------------------------------------------------------

BoundPair prop17_bounds(int genus, Limb p) {
  if (genus < 2 || genus % 2 != 0)
    throw std::invalid_argument("prop17_bounds: genus must be even and >= 2");
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("prop17_bounds: p must be an odd prime");
  const unsigned g = static_cast<unsigned>(genus);
  mpq_class half_shell(1, 2 * pow_mpz(mpz_class(static_cast<unsigned long>(p)), g + 1));
  BoundPair b;
  b.lower = (1 - qpow(p, 1)) * (1 - qpow(p, 2)) * half_shell;
  b.upper = (1 + qpow(p, g + 2)) * half_shell;
  b.lower.canonicalize();
  b.upper.canonicalize();
  return b;
}

BoundPair refined_genus2_bounds(Limb p) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("refined_genus2_bounds: p must be an odd prime");
  mpq_class half(1, 2);
  BoundPair b;
  b.lower = half * qpow(p, 3) *
            (1 - qpow(p, 1) + half * qpow(p, 2) - 2 * qpow(p, 3) + qpow(p, 4) + qpow(p, 5) -
             half * qpow(p, 6));
  b.upper = half * qpow(p, 3) * (1 - qpow(p, 1) + qpow(p, 2) + 3 * qpow(p, 4) - qpow(p, 5));
  b.lower.canonicalize();
  b.upper.canonicalize();
  return b;
}

mpq_class coprime_probability(Limb p, int m, int n) {
  if (p < 2 || m < 1 || n < 1)
    throw std::invalid_argument("coprime_probability: need p >= 2, m, n >= 1");
  mpq_class r = (1 - qpow(p, 1)) * (1 - qpow(p, 2));
  r.canonicalize();
  return r;
}

namespace {

// Univariate gcd degree over F_p for small p; a and b are coefficient vectors
// (constant first) that may carry leading zeros.
int gcd_degree_fp(std::vector<Limb> a, std::vector<Limb> b, Limb p) {
  auto deg = [](const std::vector<Limb>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
      if (f[i] != 0) return i;
    return -1;
  };
  auto inv = [p](Limb x) {  // Fermat inverse; p is a small prime
    Limb r = 1, e = p - 2, base = x % p;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  int da = deg(a), db = deg(b);
  while (db >= 0) {
    Limb lead_inv = inv(b[db]);
    while (da >= db) {  // reduce a by b
      Limb c = a[da] % p;
      if (c != 0) {
        Limb q = c * lead_inv % p;
        for (int i = 0; i <= db; ++i) a[da - db + i] = (a[da - db + i] + p * q - q * b[i] % p) % p;
      }
      --da;
      while (da >= 0 && a[da] % p == 0) --da;
    }
    std::swap(a, b);
    da = deg(a);
    db = deg(b);
  }
  return da;
}

}  // namespace

mpq_class coprime_brute_force(Limb p, int m, int n) {
  if (p < 2 || m < 1 || n < 1)
    throw std::invalid_argument("coprime_brute_force: need p >= 2, m, n >= 1");
  const mpz_class pz(static_cast<unsigned long>(p));
  const mpz_class total = pow_mpz(pz, static_cast<unsigned>(m + n + 2));
  if (total > 2000000) throw std::invalid_argument("coprime_brute_force: enumeration too large");
  const std::uint64_t na = mpz_get_ui(pow_mpz(pz, static_cast<unsigned>(m + 1)).get_mpz_t());
  const std::uint64_t nb = mpz_get_ui(pow_mpz(pz, static_cast<unsigned>(n + 1)).get_mpz_t());
  auto decode = [p](std::uint64_t code, int len) {
    std::vector<Limb> f(len);
    for (int i = 0; i < len; ++i) {
      f[i] = code % p;
      code /= p;
    }
    return f;
  };
  auto top_degree = [](const std::vector<Limb>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
      if (f[i] != 0) return i;
    return -1;
  };
  std::uint64_t coprime = 0;
  for (std::uint64_t ca = 1; ca < na; ++ca) {  // ca = 0 is the zero form
    auto fa = decode(ca, m + 1);
    const int za = m - top_degree(fa);  // multiplicity of z in the binary form
    for (std::uint64_t cb = 1; cb < nb; ++cb) {
      auto fb = decode(cb, n + 1);
      const int zb = n - top_degree(fb);
      if (za > 0 && zb > 0) continue;  // common factor z
      if (gcd_degree_fp(fa, fb, p) > 0) continue;
      ++coprime;
    }
  }
  mpq_class r(mpz_class(static_cast<unsigned long>(coprime)), total);
  r.canonicalize();
  return r;
}

mpq_class unit_square_fraction(int j) {
  if (j < 1) throw std::invalid_argument("unit_square_fraction: need j >= 1");
  return mpq_class(1, mpz_class(1) << static_cast<unsigned>(j + 1));
}

mpq_class eta(int j) {
  if (j < 1) throw std::invalid_argument("eta: need j >= 1");
  const mpz_class q = mpz_class(1) << static_cast<unsigned>(j);  // residue field size 2^j
  mpq_class r(3 * q + 4, 4 * (q + 1));
  r.canonicalize();
  return r;
}

mpq_class eta_exact(int j) {
  if (j < 1) throw std::invalid_argument("eta_exact: need j >= 1");
  const mpz_class q = mpz_class(1) << static_cast<unsigned>(j);
  // squares = sum over even valuations v of q^{-v}(1 - 1/q) * (unit square
  // fraction) = [q/(q+1)] * 2^{-(j+1)}; nonsquares are the complement.
  mpq_class squares = mpq_class(q, q + 1) * unit_square_fraction(j);
  mpq_class r = 1 - squares;
  r.canonicalize();
  return r;
}

// --- tables and products ----------------------------------------------------------

LocalDensityTable measure_table(int genus, Limb prime_bound, std::uint64_t n_inf,
                                std::uint64_t n_two, std::uint64_t seed,
                                const SamplingPolicy& policy) {
  if (genus < 0 || prime_bound < 2)
    throw std::invalid_argument("measure_table: need genus >= 0 and prime_bound >= 2");
  LocalDensityTable t;
  t.genus = genus;
  t.prime_bound = prime_bound;
  t.s_inf = estimate_s_inf(genus, std::max<std::uint64_t>(n_inf, 1), seed);
  if (genus % 2 == 1) {  // every local density vanishes in odd genus
    for (Limb p = 2; p <= prime_bound; ++p)
      if (is_prime_u(p)) t.s_p[p].bounds = BoundPair{mpq_class(0), mpq_class(0)};
    return t;
  }
  t.s_p[2].estimate = estimate_s_p(genus, 2, n_two, seed, policy);
  for (Limb p = 3; p <= prime_bound; p += 2) {
    if (!is_prime_u(p)) continue;
    BoundPair b = prop17_bounds(genus, p);
    if (genus == 2) {
      BoundPair r = refined_genus2_bounds(p);
      if (r.lower > b.lower) b.lower = r.lower;
      if (r.upper < b.upper) b.upper = r.upper;
    }
    t.s_p[p].bounds = b;
  }
  return t;
}

Interval entry_interval(const TableEntry& entry) {
  if (entry.bounds && entry.estimate) {
    Interval b = bounds_interval(*entry.bounds);
    Interval e = estimate_interval(*entry.estimate);
    Interval r{std::max(b.lo, e.lo), std::min(b.hi, e.hi)};
    return r.lo <= r.hi ? r : b;  // inconsistent measurement: trust the exact pair
  }
  if (entry.bounds) return bounds_interval(*entry.bounds);
  if (entry.estimate) return estimate_interval(*entry.estimate);
  throw std::invalid_argument("entry_interval: empty table entry");
}

bool validate_table(const LocalDensityTable& table, std::string* offender) {
  auto fail = [&](const std::string& msg) {
    if (offender) *offender = msg;
    return false;
  };
  const bool odd_genus = table.genus % 2 == 1;
  const mpq_class two_band_hi = eta(1) * eta(1) * eta(1) * eta(3);
  for (const auto& [p, entry] : table.s_p) {
    BoundPair band;
    if (odd_genus)
      band = BoundPair{mpq_class(0), mpq_class(0)};
    else if (p == 2)
      band = BoundPair{mpq_class(0), two_band_hi};
    else
      band = prop17_bounds(table.genus, p);
    if (entry.bounds) {
      if (entry.bounds->lower > entry.bounds->upper || entry.bounds->lower < band.lower ||
          entry.bounds->upper > band.upper)
        return fail("exact entry outside its band at p=" + std::to_string(p));
    }
    if (entry.estimate) {
      const Estimate& e = *entry.estimate;
      const double slack = 3.0 * e.std_error;
      if (e.value < dbl_down(band.lower) - slack || e.value > dbl_up(band.upper) + slack)
        return fail("estimate outside its band at p=" + std::to_string(p));
      if (e.flagged) return fail("flagged estimate at p=" + std::to_string(p));
    }
    if (!entry.bounds && !entry.estimate) return fail("empty entry at p=" + std::to_string(p));
  }
  const double inf_cap = odd_genus ? 0.0 : 0.25;  // the real place density is at most 1/4
  if (table.s_inf.value > inf_cap + 3.0 * table.s_inf.std_error)
    return fail("real-place estimate above its cap");
  if (table.s_inf.flagged) return fail("flagged real-place estimate");
  return true;
}

namespace {

Interval table_interval(const LocalDensityTable& t, Limb p) {
  auto it = t.s_p.find(p);
  if (it == t.s_p.end())
    throw std::invalid_argument("table has no entry for p=" + std::to_string(p));
  return entry_interval(it->second);
}

Interval tail_one_minus(const LocalDensityTable& t, double k) {
  // product over primes p > prime_bound of (1 - k s_p), bounded below by
  // 1 - k * (tail sum of upper bounds) and above by 1.
  if (t.genus % 2 == 1) return {1.0, 1.0};
  const double T = dbl_up(tail_upper_sum(t.genus, t.prime_bound));
  return {down(std::max(0.0, 1.0 - k * T)), 1.0};
}

}  // namespace

Interval nu_of_set(const std::set<std::string>& places, const LocalDensityTable& table) {
  std::set<Limb> finite_in_S;
  bool inf_in_S = false;
  for (const auto& name : places) {
    if (name == "inf") {
      inf_in_S = true;
      continue;
    }
    if (name.empty() || name.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("nu_of_set: unknown place " + name);
    Limb p = std::stoull(name);
    if (table.s_p.find(p) == table.s_p.end())
      throw std::invalid_argument("nu_of_set: place beyond the table: " + name);
    finite_in_S.insert(p);
  }
  Interval inf_i = estimate_interval(table.s_inf);
  Interval acc = inf_in_S ? inf_i : ione_minus(inf_i, 1.0);
  for (const auto& [p, entry] : table.s_p) {
    Interval e = entry_interval(entry);
    acc = imul(acc, finite_in_S.count(p) ? e : ione_minus(e, 1.0));
  }
  acc = imul(acc, tail_one_minus(table, 1.0));
  return clamp01(acc);
}

Interval rho_interval(int genus, const LocalDensityTable& table, Limb prime_bound) {
  if (genus % 2 == 1) return {0.0, 0.0};  // no deficient places in odd genus
  if (prime_bound < 2 || prime_bound > table.prime_bound)
    throw std::invalid_argument("rho_interval: prime bound not covered by the table");
  if (table.genus != genus) throw std::invalid_argument("rho_interval: genus mismatch");
  Interval prod = ione_minus(estimate_interval(table.s_inf), 2.0);
  for (Limb p = 2; p <= prime_bound; ++p) {
    if (!is_prime_u(p)) continue;
    prod = imul(prod, ione_minus(table_interval(table, p), 2.0));
  }
  LocalDensityTable trimmed = table;  // tail starts at the requested bound
  trimmed.prime_bound = prime_bound;
  prod = imul(prod, tail_one_minus(trimmed, 2.0));
  Interval rho{down(0.5 * (1.0 - prod.hi)), up(0.5 * (1.0 - prod.lo))};
  return clamp01(rho);
}

// --- direct global sampling ---------------------------------------------------------

global::GlobalOptions default_rho_options() {
  global::GlobalOptions opt;
  opt.factor_mode = global::FactorMode::Heuristic;
  opt.trial_bound = 10000;
  opt.search.dedupe_extensions = true;
  return opt;
}

RhoDirect estimate_rho_direct(int genus, const mpz_class& height, std::uint64_t n,
                              std::uint64_t seed, const global::GlobalOptions& options) {
  if (genus < 0 || n < 1 || height < 1)
    throw std::invalid_argument("estimate_rho_direct: need genus >= 0, n >= 1, height >= 1");
  mpz_class span_z = 2 * height + 1;
  if (!span_z.fits_ulong_p())
    throw std::invalid_argument("estimate_rho_direct: height too large");
  const std::uint64_t span = mpz_get_ui(span_z.get_mpz_t());
  const int ncoeffs = 2 * genus + 3;
  RhoDirect out;
  std::uint64_t odd = 0, undecided = 0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    std::vector<mpz_class> a(ncoeffs);
    for (int j = 0; j < ncoeffs; ++j) {
      std::uint64_t block = 0;
      std::uint64_t r = rng::uniform_below(span, seed, idx,
                                           kRhoLane + static_cast<std::uint64_t>(j), block);
      a[j] = mpz_class(static_cast<unsigned long>(r)) - height;
    }
    locsolve::Curve curve;
    try {
      curve = locsolve::make_curve(genus, std::move(a));
    } catch (const std::invalid_argument&) {
      ++out.n_singular;  // vanishing discriminant: not a genus-g curve
      continue;
    }
    global::ParityReport report;
    try {
      report = global::parity(curve, options);
    } catch (const std::exception&) {
      ++undecided;  // a local search failed to certify: counted exclusion
      continue;
    }
    if (!report.undecided_places.empty()) {
      ++undecided;
      continue;
    }
    if (!report.scan_complete) ++out.n_heuristic;
    ++out.histogram[report.deficient_places];
    if (report.verdict == global::Parity::Odd) ++odd;
  }
  const std::uint64_t usable = n - out.n_singular;
  out.est = finish_bernoulli(odd, usable == 0 ? 1 : usable, undecided, seed,
                             fmt_config("estimate_rho_direct",
                                        {kv("genus", genus), "height=" + height.get_str(),
                                         kv("n", n),
                                         "trial_bound=" + options.trial_bound.get_str(),
                                         std::string("factor_mode=") +
                                             global::to_string(options.factor_mode)}),
                             1e-4);
  out.est.n_samples = n;
  return out;
}

}  // namespace oddjac::density

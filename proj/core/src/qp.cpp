#include "oddjac/qp.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "oddjac/intpoly.hpp"

namespace oddjac::qp {

namespace {

mpz_class pow_ui(Limb p, unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), k);
  return r;
}

long vp_mpz(const mpz_class& v, Limb p) {
  assert(v != 0);
  static thread_local mpz_class tmp, pz;
  pz = static_cast<unsigned long>(p);
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

LocalField::LocalField(Limb p, unsigned f, unsigned e, std::vector<std::vector<mpz_class>> b,
                       int precision)
    : p_(p), f_(f), e_(e), prec_(precision), kappa_(p, f), eis_b_(std::move(b)) {
  if (e_ < 1 || f_ < 1) throw std::invalid_argument("tower degrees must be positive");
  if (prec_ < 1) throw std::invalid_argument("precision must be positive");
  kappa_def_ = kappa_.defining();
  if (e_ == 1) {
    if (!eis_b_.empty()) throw std::invalid_argument("unramified field takes no Eisenstein data");
    return;
  }
  if (eis_b_.size() != e_) throw std::invalid_argument("Eisenstein coefficient count");
  for (const auto& c : eis_b_)
    if (c.size() != f_) throw std::invalid_argument("Eisenstein coefficient length");
  bool unit = false;
  for (const mpz_class& z : eis_b_[0])
    if (!mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(p_))) unit = true;
  if (!unit) throw std::invalid_argument("Eisenstein constant term must be p * unit");
  // Invert B = sum b[s] pi^s once (pi^e = -p*B), used for division by pi.
  Element B = zero(prec_);
  for (unsigned s = 0; s < e_; ++s)
    for (unsigned j = 0; j < f_; ++j) B.coords[s * f_ + j] = eis_b_[s][j];
  canonicalize(B);
  b_inv_ = invert_unit(B);
}

LocalField LocalField::qp(Limb p, int precision) { return LocalField(p, 1, 1, {}, precision); }

LocalField LocalField::unramified(Limb p, unsigned f, int precision) {
  return LocalField(p, f, 1, {}, precision);
}

LocalField LocalField::eisenstein(Limb p, unsigned f, unsigned e,
                                  std::vector<std::vector<mpz_class>> b, int precision) {
  if (e < 2) throw std::invalid_argument("eisenstein() needs ramification degree >= 2");
  return LocalField(p, f, e, std::move(b), precision);
}

LocalField LocalField::with_precision(int precision) const {
  return LocalField(p_, f_, e_, eis_b_, precision);
}

std::string LocalField::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (f_ > 1) os << " unramified deg " << f_;
  if (e_ > 1) {
    os << " eisenstein e=" << e_ << " [x^" << e_;
    for (unsigned s = e_; s-- > 0;) {
      os << " + " << p_ << "*(";
      bool first = true;
      for (unsigned j = 0; j < f_; ++j) {
        if (eis_b_[s][j] == 0) continue;
        if (!first) os << "+";
        first = false;
        os << eis_b_[s][j];
        if (j >= 1) os << "*w";
        if (j >= 2) os << "^" << j;
      }
      if (first) os << "0";
      os << ")";
      if (s >= 1) {
        os << "*x";
        if (s >= 2) os << "^" << s;
      }
    }
    os << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Canonical coordinates and precision
// ---------------------------------------------------------------------------

int LocalField::coeff_precision(int precision, unsigned row) const {
  long v = static_cast<long>(precision) - static_cast<long>(row);
  if (v <= 0) return 0;
  return static_cast<int>((v + e_ - 1) / e_);
}

const mpz_class& LocalField::ppow(int k) const {
  if (ppow_.empty()) ppow_.push_back(mpz_class(1));
  while (static_cast<int>(ppow_.size()) <= k)
    ppow_.push_back(ppow_.back() * static_cast<unsigned long>(p_));
  return ppow_[static_cast<size_t>(k)];
}

void LocalField::canonicalize(Element& a) const {
  for (unsigned i = 0; i < e_; ++i) {
    int kp = coeff_precision(a.precision, i);
    if (kp == 0) {
      for (unsigned j = 0; j < f_; ++j) a.coords[i * f_ + j] = 0;
      continue;
    }
    const mpz_class& mod = ppow(kp);
    for (unsigned j = 0; j < f_; ++j) {
      mpz_class& c = a.coords[i * f_ + j];
      if (mpz_sgn(c.get_mpz_t()) >= 0 && mpz_cmp(c.get_mpz_t(), mod.get_mpz_t()) < 0) continue;
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    }
  }
}

LocalField::Element LocalField::zero(int precision) const {
  Element a;
  a.coords.assign(e_ * f_, mpz_class(0));
  a.precision = precision;
  return a;
}

LocalField::Element LocalField::from_mpz(const mpz_class& v, int precision) const {
  Element a = zero(precision);
  a.coords[0] = v;
  canonicalize(a);
  return a;
}

LocalField::Element LocalField::from_mpq(const mpq_class& v) const {
  if (mpz_divisible_ui_p(v.get_den().get_mpz_t(), static_cast<unsigned long>(p_)))
    throw std::domain_error("denominator is not a p-adic unit");
  Element num = from_mpz(v.get_num());
  Element den = from_mpz(v.get_den());
  return mul(num, invert_unit(den));
}

LocalField::Element LocalField::pi() const {
  if (e_ == 1) return from_mpz(static_cast<unsigned long>(p_));
  Element a = zero(prec_);
  a.coords[1 * f_ + 0] = 1;
  return a;
}

LocalField::Element LocalField::omega() const {
  if (f_ == 1) return one();
  Element a = zero(prec_);
  a.coords[0 * f_ + 1] = 1;
  return a;
}

LocalField::Element LocalField::lift(const fq::Elem& r, int precision) const {
  Element a = zero(precision);
  for (unsigned j = 0; j < f_; ++j) a.coords[j] = mpz_class(static_cast<unsigned long>(r[j]));
  canonicalize(a);
  return a;
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

LocalField::Element LocalField::add(const Element& a, const Element& b) const {
  Element r = zero(std::min(a.precision, b.precision));
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = a.coords[i] + b.coords[i];
  canonicalize(r);
  return r;
}

LocalField::Element LocalField::sub(const Element& a, const Element& b) const {
  Element r = zero(std::min(a.precision, b.precision));
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = a.coords[i] - b.coords[i];
  canonicalize(r);
  return r;
}

LocalField::Element LocalField::neg(const Element& a) const {
  Element r = a;
  for (mpz_class& c : r.coords) c = -c;
  canonicalize(r);
  return r;
}

std::vector<mpz_class> LocalField::umul(const std::vector<mpz_class>& a,
                                        const std::vector<mpz_class>& b) const {
  if (f_ == 1) return {a[0] * b[0]};
  std::vector<mpz_class> conv(2 * f_ - 1, mpz_class(0));
  for (unsigned i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < f_; ++j) {
      if (b[j] == 0) continue;
      conv[i + j] += a[i] * b[j];
    }
  }
  for (unsigned k = 2 * f_ - 2; k >= f_; --k) {
    if (conv[k] != 0) {
      mpz_class c = conv[k];
      conv[k] = 0;
      for (unsigned i = 0; i < f_; ++i)
        conv[k - f_ + i] -= c * static_cast<unsigned long>(kappa_def_[i]);
    }
    if (k == f_) break;
  }
  conv.resize(f_);
  return conv;
}

LocalField::Element LocalField::mul(const Element& a, const Element& b) const {
  Val va = valuation(a), vb = valuation(b);
  long newn = std::min(static_cast<long>(a.precision) + vb.v,
                       static_cast<long>(b.precision) + va.v);
  if (f_ == 1) {
    // Allocation-light path for prime residue fields (the hot case).
    std::vector<mpz_class> rows(2 * e_ - 1);
    for (unsigned ia = 0; ia < e_; ++ia) {
      const mpz_class& ca = a.coords[ia];
      if (ca == 0) continue;
      for (unsigned ib = 0; ib < e_; ++ib) {
        const mpz_class& cb = b.coords[ib];
        if (cb == 0) continue;
        mpz_addmul(rows[ia + ib].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
    }
    if (e_ >= 2) {
      static thread_local mpz_class tmp;
      for (unsigned t = 2 * e_ - 2; t >= e_; --t) {
        if (rows[t] != 0) {
          for (unsigned s = 0; s < e_; ++s) {
            if (eis_b_[s][0] == 0) continue;
            tmp = rows[t] * eis_b_[s][0];
            mpz_submul_ui(rows[t - e_ + s].get_mpz_t(), tmp.get_mpz_t(),
                          static_cast<unsigned long>(p_));
          }
        }
        if (t == e_) break;
      }
    }
    Element r;
    rows.resize(e_);
    r.coords = std::move(rows);
    r.precision = static_cast<int>(newn);
    canonicalize(r);
    return r;
  }
  std::vector<std::vector<mpz_class>> rows(2 * e_ - 1, std::vector<mpz_class>(f_, mpz_class(0)));
  std::vector<mpz_class> rowa(f_), rowb(f_);
  for (unsigned ia = 0; ia < e_; ++ia) {
    bool zeroa = true;
    for (unsigned j = 0; j < f_; ++j) {
      rowa[j] = a.coords[ia * f_ + j];
      if (rowa[j] != 0) zeroa = false;
    }
    if (zeroa) continue;
    for (unsigned ib = 0; ib < e_; ++ib) {
      bool zerob = true;
      for (unsigned j = 0; j < f_; ++j) {
        rowb[j] = b.coords[ib * f_ + j];
        if (rowb[j] != 0) zerob = false;
      }
      if (zerob) continue;
      std::vector<mpz_class> w = umul(rowa, rowb);
      for (unsigned j = 0; j < f_; ++j) rows[ia + ib][j] += w[j];
    }
  }
  // Reduce pi^t for t >= e via pi^e = -p * sum b[s] pi^s.
  if (e_ >= 2) {
    for (unsigned t = 2 * e_ - 2; t >= e_; --t) {
      bool zt = true;
      for (unsigned j = 0; j < f_; ++j)
        if (rows[t][j] != 0) zt = false;
      if (!zt) {
        for (unsigned s = 0; s < e_; ++s) {
          std::vector<mpz_class> w = umul(rows[t], eis_b_[s]);
          for (unsigned j = 0; j < f_; ++j)
            rows[t - e_ + s][j] -= static_cast<unsigned long>(p_) * w[j];
        }
      }
      if (t == e_) break;
    }
  }
  Element r = zero(static_cast<int>(newn));
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < f_; ++j) r.coords[i * f_ + j] = rows[i][j];
  canonicalize(r);
  return r;
}

LocalField::Element LocalField::mul_mpz(const mpz_class& c, const Element& a) const {
  if (c == 0) return zero(a.precision);
  long vc = vp_mpz(c, p_);
  Element r = a;
  r.precision = a.precision + static_cast<int>(static_cast<long>(e_) * vc);
  for (mpz_class& x : r.coords) x *= c;
  canonicalize(r);
  return r;
}

LocalField::Element LocalField::pow(Element base, mpz_class n) const {
  assert(n >= 0);
  Element r = one();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = mul(r, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return r;
}

LocalField::Element LocalField::shift(const Element& a, long k) const {
  Element cur = a;
  if (k >= 0) {
    for (long step = 0; step < k; ++step) {
      if (e_ == 1) {
        for (mpz_class& c : cur.coords) c *= static_cast<unsigned long>(p_);
        cur.precision += 1;
        continue;
      }
      std::vector<mpz_class> top(cur.coords.end() - f_, cur.coords.end());
      for (unsigned i = e_ - 1; i >= 1; --i)
        for (unsigned j = 0; j < f_; ++j) cur.coords[i * f_ + j] = cur.coords[(i - 1) * f_ + j];
      for (unsigned j = 0; j < f_; ++j) cur.coords[j] = 0;
      bool zt = true;
      for (unsigned j = 0; j < f_; ++j)
        if (top[j] != 0) zt = false;
      if (!zt) {
        for (unsigned s = 0; s < e_; ++s) {
          std::vector<mpz_class> w = umul(top, eis_b_[s]);
          for (unsigned j = 0; j < f_; ++j)
            cur.coords[s * f_ + j] -= static_cast<unsigned long>(p_) * w[j];
        }
      }
      cur.precision += 1;
    }
    canonicalize(cur);
    return cur;
  }
  for (long step = 0; step < -k; ++step) {
    if (cur.precision < 1) throw std::domain_error("pi-division below precision");
    Val v = valuation(cur);
    if (v.finite && v.v < 1) throw std::domain_error("pi-division of a unit");
    if (!v.finite) {
      cur = zero(cur.precision - 1);
      continue;
    }
    if (e_ == 1) {
      for (mpz_class& c : cur.coords)
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p_));
      cur.precision -= 1;
      canonicalize(cur);
      continue;
    }
    // x/pi = -(x * pi^{e-1} * B^{-1}) / p  (exact coordinate division).
    Element w = shift(cur, static_cast<long>(e_) - 1);
    Element u = mul(w, b_inv_);
    for (mpz_class& c : u.coords)
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p_));
    u.precision -= static_cast<int>(e_);
    cur = neg(u);
  }
  return cur;
}

LocalField::Element LocalField::invert_unit(const Element& a) const {
  Val v = valuation(a);
  if (!v.finite || v.v != 0) throw std::domain_error("invert_unit of a non-unit");
  Element z = lift(kappa_.inv(residue(a)), a.precision);
  Element onea = from_mpz(1, a.precision);
  for (int iter = 0; iter < 64; ++iter) {
    Element err = sub(onea, mul(a, z));
    if (is_zero_at_precision(err)) return z;
    z = add(z, mul(z, err));
  }
  throw std::logic_error("unit inversion did not converge");
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

Val LocalField::valuation(const Element& a) const {
  long best = -1;
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < f_; ++j) {
      const mpz_class& c = a.coords[i * f_ + j];
      if (c == 0) continue;
      long cand = static_cast<long>(e_) * vp_mpz(c, p_) + static_cast<long>(i);
      if (best < 0 || cand < best) best = cand;
    }
  if (best < 0 || best >= a.precision) return {false, a.precision};
  return {true, best};
}

bool LocalField::is_zero_at_precision(const Element& a) const {
  for (const mpz_class& c : a.coords)
    if (c != 0) return false;
  return true;
}

bool LocalField::equal_at_precision(const Element& a, const Element& b) const {
  return is_zero_at_precision(sub(a, b));
}

fq::Elem LocalField::residue(const Element& a) const {
  if (a.precision < 1) throw std::domain_error("residue needs precision >= 1");
  fq::Elem r(f_, 0);
  for (unsigned j = 0; j < f_; ++j)
    r[j] = mpz_fdiv_ui(a.coords[j].get_mpz_t(), static_cast<unsigned long>(p_));
  return r;
}

std::vector<LocalField::Element> LocalField::residue_reps() const {
  std::vector<Element> out;
  mpz_class q = kappa_.order();
  for (mpz_class i = 0; i < q; ++i) out.push_back(lift(kappa_.elem_at(i), prec_));
  return out;
}

std::vector<fq::Elem> LocalField::digits(const Element& a) const {
  std::vector<fq::Elem> out;
  Element x = a;
  for (int k = 0; k < a.precision; ++k) {
    fq::Elem d = residue(x);
    out.push_back(d);
    if (k + 1 < a.precision) x = shift(sub(x, lift(d, x.precision)), -1);
  }
  return out;
}

std::string LocalField::to_string(const Element& a) const {
  std::ostringstream os;
  auto ds = digits(a);
  bool first = true;
  for (size_t k = 0; k < ds.size(); ++k) {
    if (kappa_.is_zero(ds[k])) continue;
    if (!first) os << " + ";
    first = false;
    if (f_ == 1)
      os << kappa_.to_string(ds[k]);
    else
      os << "(" << kappa_.to_string(ds[k]) << ")";
    if (k >= 1) {
      os << "*pi";
      if (k >= 2) os << "^" << k;
    }
  }
  if (first) os << "0";
  os << " + O(pi^" << a.precision << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Squares
// ---------------------------------------------------------------------------

LocalField::SquareResult LocalField::is_square(const Element& a) const {
  SquareResult res;
  Val v = valuation(a);
  if (!v.finite) {
    res.verdict = SquareVerdict::NeedsPrecision;
    res.needed_precision = a.precision + static_cast<int>(2 * val_of_2()) + 1;
    return res;
  }
  if (v.v % 2 != 0) {
    res.verdict = SquareVerdict::No;
    return res;
  }
  Element u = shift(a, -v.v);
  long need = 2 * val_of_2() + 1;
  if (u.precision < need) {
    res.verdict = SquareVerdict::NeedsPrecision;
    res.needed_precision = static_cast<int>(v.v + need);
    return res;
  }
  if (p_ != 2) {
    fq::Elem r = residue(u);
    if (!kappa_.is_square(r)) {
      res.verdict = SquareVerdict::No;
      return res;
    }
    Element y0 = lift(*kappa_.sqrt(r), u.precision);
    Poly g = {neg(u), zero(u.precision), one()};
    auto root = hensel_root(g, y0);
    if (!root) throw std::logic_error("square lift failed despite square residue");
    res.verdict = SquareVerdict::Yes;
    res.sqrt = shift(*root, v.v / 2);
    return res;
  }
  // p == 2: unique residue square root, enumerate corrections up to pi^{2e2}
  // where e2 = val(2); y^2 = u solvable iff some candidate matches to
  // pi^{2e2+1}.
  long e2 = val_of_2();
  fq::Elem s0 = *kappa_.sqrt(residue(u));
  std::vector<Element> reps = residue_reps();
  unsigned levels = static_cast<unsigned>(2 * e2);
  std::vector<size_t> idx(levels, 0);
  size_t q = reps.size();
  while (true) {
    Element y = lift(s0, u.precision);
    for (unsigned i = 0; i < levels; ++i)
      if (idx[i] != 0) y = add(y, shift(reps[idx[i]], static_cast<long>(i) + 1));
    Element w = sub(mul(y, y), u);
    Val vw = valuation(w);
    if (!vw.finite || vw.v >= 2 * e2 + 1) {
      Poly g = {neg(u), zero(u.precision), one()};
      auto root = hensel_root(g, y);
      if (!root) throw std::logic_error("dyadic square lift failed after match");
      res.verdict = SquareVerdict::Yes;
      res.sqrt = shift(*root, v.v / 2);
      return res;
    }
    // odometer
    unsigned pos = 0;
    while (pos < levels && ++idx[pos] == q) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == levels) break;
  }
  res.verdict = SquareVerdict::No;
  return res;
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

LocalField::Element LocalField::eval(const Poly& g, const Element& x) const {
  if (g.empty()) return zero(prec_);
  Element r = g.back();
  for (size_t i = g.size() - 1; i-- > 0;) r = add(mul(r, x), g[i]);
  return r;
}

LocalField::Poly LocalField::derivative(const Poly& g) const {
  Poly d;
  for (size_t i = 1; i < g.size(); ++i)
    d.push_back(mul_mpz(mpz_class(static_cast<unsigned long>(i)), g[i]));
  return d;
}

LocalField::Poly LocalField::poly_from_mpz(const std::vector<mpz_class>& coeffs) const {
  Poly g;
  for (const mpz_class& c : coeffs) g.push_back(from_mpz(c));
  return g;
}

std::optional<LocalField::Element> LocalField::hensel_root(const Poly& g, const Element& a) const {
  Poly dg = derivative(g);
  Element cur = a;
  for (int iter = 0; iter < 200; ++iter) {
    Element fa = eval(g, cur);
    Val vfa = valuation(fa);
    if (!vfa.finite) return cur;  // zero to working precision
    Element fpa = eval(dg, cur);
    Val vfp = valuation(fpa);
    if (!vfp.finite) return std::nullopt;
    if (vfa.v <= 2 * vfp.v) return iter == 0 ? std::nullopt : std::optional<Element>(cur);
    Element num = shift(fa, -vfp.v);
    Element den = shift(fpa, -vfp.v);
    Element step = mul(num, invert_unit(den));
    if (is_zero_at_precision(step)) return cur;
    cur = sub(cur, step);
  }
  throw std::logic_error("hensel_root did not converge");
}

namespace {

bool has_root_dfs(const LocalField& L, const LocalField::Poly& g, const LocalField::Poly& dg,
                  const std::vector<LocalField::Element>& reps, const LocalField::Element& a,
                  int k, int max_depth) {
  LocalField::Element fa = L.eval(g, a);
  Val vfa = L.valuation(fa);
  if (vfa.finite && vfa.v < k) return false;  // no extension of a can be a root
  LocalField::Element fpa = L.eval(dg, a);
  Val vfp = L.valuation(fpa);
  if (vfp.finite && vfa.v > 2 * vfp.v) return true;  // Newton converges from a
  if (k >= max_depth)
    throw DepthExhausted("root search depth bound hit without decision");
  for (const auto& t : reps) {
    LocalField::Element child = L.add(a, L.shift(t, k));
    if (has_root_dfs(L, g, dg, reps, child, k + 1, max_depth)) return true;
  }
  return false;
}

}  // namespace

bool LocalField::has_root(const Poly& g, int max_depth) const {
  if (max_depth <= 0) max_depth = prec_ - static_cast<int>(2 * val_of_2()) - 2;
  Poly dg = derivative(g);
  std::vector<Element> reps = residue_reps();
  return has_root_dfs(*this, g, dg, reps, zero(prec_), 0, max_depth);
}

// ---------------------------------------------------------------------------
// Extension enumeration
// ---------------------------------------------------------------------------

namespace {

// Coset representatives of (kappa*)^gcd(e, q-1) in kappa*, found by scanning
// in enumeration order and comparing signatures a^{(q-1)/g} (no factoring of
// q-1 needed).
std::vector<fq::Elem> tame_unit_reps(const fq::Field& kappa, unsigned e) {
  mpz_class q = kappa.order();
  mpz_class qm1 = q - 1;
  mpz_class g = gcd(qm1, mpz_class(e));
  unsigned long G = g.get_ui();
  mpz_class exp = qm1 / g;
  std::vector<fq::Elem> reps;
  std::set<std::vector<fq::Limb>> sigs;
  for (mpz_class idx = 1; idx < q && reps.size() < G; ++idx) {
    fq::Elem a = kappa.elem_at(idx);
    fq::Elem sig = kappa.pow(a, exp);
    if (sigs.insert(sig).second) reps.push_back(a);
  }
  return reps;
}

}  // namespace

std::vector<LocalField> enumerate_odd_extensions(Limb p, unsigned max_degree, int precision) {
  std::vector<LocalField> out;
  for (unsigned d = 1; d <= max_degree; d += 2) {
    for (unsigned f = 1; f <= d; ++f) {
      if (d % f != 0) continue;
      unsigned e = d / f;
      if (e == 1) {
        out.push_back(LocalField::unramified(p, f, precision));
        continue;
      }
      if (e % p != 0) {
        // Tame: x^e - p*r over the degree-f unramified field.
        fq::Field kappa(p, f);
        for (const fq::Elem& r : tame_unit_reps(kappa, e)) {
          std::vector<std::vector<mpz_class>> b(e, std::vector<mpz_class>(f, mpz_class(0)));
          for (unsigned j = 0; j < f; ++j)
            b[0][j] = -mpz_class(static_cast<unsigned long>(r[j]));
          out.push_back(LocalField::eisenstein(p, f, e, std::move(b), precision));
        }
        continue;
      }
      // Wild: Krasner-saturated family of truncated Eisenstein polynomials
      // x^e + p*(c_{e-1} x^{e-1} + ... + c_0), coefficient i known modulo
      // p^{k_i} with k_i = ceil((B - i)/e) - 1, B = 2e(1 + v_p(e)) + 1.
      unsigned vpe = 0;
      {
        unsigned ee = e;
        while (ee % p == 0) {
          ee /= p;
          ++vpe;
        }
      }
      long B = 2 * static_cast<long>(e) * (1 + static_cast<long>(vpe)) + 1;
      std::vector<unsigned long> kdig(e);
      std::vector<mpz_class> coeff_count(e);  // (p^{k_i})^f choices per coefficient
      mpz_class total = 1;
      for (unsigned i = 0; i < e; ++i) {
        long ki = (B - static_cast<long>(i) + static_cast<long>(e) - 1) / static_cast<long>(e) - 1;
        kdig[i] = static_cast<unsigned long>(ki);
        mpz_class per = pow_ui(p, kdig[i]);
        mpz_class cnt = 1;
        for (unsigned j = 0; j < f; ++j) cnt *= per;
        coeff_count[i] = cnt;
        total *= cnt;
      }
      if (total > (1 << 24))
        throw std::runtime_error("wild Eisenstein enumeration too large");
      for (mpz_class n = 0; n < total; ++n) {
        mpz_class v = n;
        std::vector<std::vector<mpz_class>> b(e, std::vector<mpz_class>(f, mpz_class(0)));
        bool unit0 = false;
        for (unsigned i = 0; i < e; ++i) {
          mpz_class ci = v % coeff_count[i];
          v /= coeff_count[i];
          mpz_class per = pow_ui(p, kdig[i]);
          for (unsigned j = 0; j < f; ++j) {
            b[i][j] = ci % per;
            ci /= per;
            if (i == 0 && !mpz_divisible_ui_p(b[i][j].get_mpz_t(), static_cast<unsigned long>(p)))
              unit0 = true;
          }
        }
        if (!unit0) continue;
        out.push_back(LocalField::eisenstein(p, f, e, std::move(b), precision));
      }
    }
  }
  return out;
}

namespace {

// Integer coefficients of the Eisenstein polynomial when f == 1.
std::vector<mpz_class> eis_int_coeffs(const LocalField& L) {
  std::vector<mpz_class> c(L.e() + 1, mpz_class(0));
  for (unsigned s = 0; s < L.e(); ++s)
    c[s] = mpz_class(static_cast<unsigned long>(L.p())) * L.eisenstein_b()[s][0];
  c[L.e()] = 1;
  return c;
}

// All embeddings of the unramified subfield generator into itself (the f
// Frobenius twists), as elements of the degree-f unramified field.
std::vector<LocalField::Element> frobenius_twists(const LocalField& U) {
  const fq::Field& kappa = U.residue_field();
  std::vector<mpz_class> D;
  for (fq::Limb c : kappa.defining()) D.push_back(mpz_class(static_cast<unsigned long>(c)));
  LocalField::Poly Dp = U.poly_from_mpz(D);
  std::vector<LocalField::Element> roots;
  fq::Elem r = kappa.gen();
  for (unsigned j = 0; j < U.f(); ++j) {
    auto root = U.hensel_root(Dp, U.lift(r, U.precision()));
    if (!root) throw std::logic_error("unramified defining polynomial failed to lift");
    roots.push_back(*root);
    r = kappa.frobenius(r);
  }
  return roots;
}

// Does rep's Eisenstein polynomial (possibly Frobenius-twisted) have a root
// in cand? Both are degree-e totally ramified extensions of the same
// unramified field. max_depth is a sound search bound.
bool same_totally_ramified_class(const LocalField& rep, const LocalField& cand_at,
                                 int max_depth) {
  unsigned e = rep.e(), f = rep.f();
  auto rep_poly_in = [&](const LocalField& T, const LocalField::Element* twisted_omega)
      -> LocalField::Poly {
    LocalField::Poly g;
    if (f == 1) {
      for (unsigned s = 0; s < e; ++s)
        g.push_back(T.from_mpz(mpz_class(static_cast<unsigned long>(rep.p())) *
                               rep.eisenstein_b()[s][0]));
    } else {
      // Evaluate each b[s] (a polynomial in omega) at the twisted omega.
      LocalField U = LocalField::unramified(rep.p(), f, T.precision());
      for (unsigned s = 0; s < e; ++s) {
        LocalField::Poly bs;
        for (const mpz_class& z : rep.eisenstein_b()[s]) bs.push_back(U.from_mpz(z));
        LocalField::Element tw = U.eval(bs, *twisted_omega);
        LocalField::Element coeff = T.zero(T.precision());
        for (unsigned j = 0; j < f; ++j) coeff.coords[j] = tw.coords[j];
        coeff = T.mul_mpz(mpz_class(static_cast<unsigned long>(rep.p())), coeff);
        g.push_back(coeff);
      }
    }
    g.push_back(T.one());
    return g;
  };
  auto root_with_escalation = [&](const LocalField::Element* twisted_omega) {
    // Most pairs decide within a few digits; escalate only when needed.
    for (int depth : {14, max_depth}) {
      if (depth > max_depth) depth = max_depth;
      int need = depth + static_cast<int>(2 * (rep.p() == 2 ? e : 0)) + 4;
      LocalField T = cand_at.precision() >= need ? cand_at : cand_at.with_precision(need);
      try {
        return T.has_root(rep_poly_in(T, twisted_omega), depth);
      } catch (const DepthExhausted&) {
        if (depth >= max_depth) throw;
      }
    }
    throw std::logic_error("unreachable: escalation ladder ends at the sound bound");
  };
  if (f == 1) return root_with_escalation(nullptr);
  LocalField U = LocalField::unramified(rep.p(), f, cand_at.precision());
  for (const auto& w : frobenius_twists(U))
    if (root_with_escalation(&w)) return true;
  return false;
}

}  // namespace

std::vector<LocalField> distinct_odd_extensions(Limb p, unsigned max_degree, int precision) {
  std::vector<LocalField> all = enumerate_odd_extensions(p, max_degree, precision);
  struct ClassRep {
    size_t index;           // into `all`
    unsigned e, f;
    long disc_sig;          // p-valuation bucket (f==1 ramified only; else -1)
  };
  std::vector<ClassRep> classes;
  std::vector<LocalField> out;
  for (size_t i = 0; i < all.size(); ++i) {
    const LocalField& cand = all[i];
    if (cand.e() == 1) {
      classes.push_back({i, cand.e(), cand.f(), -1});
      out.push_back(cand);
      continue;
    }
    long sig = -1;
    long vd_l = static_cast<long>(cand.e()) * (static_cast<long>(cand.e()) - 1);
    if (cand.f() == 1) {
      std::vector<mpz_class> E = eis_int_coeffs(cand);
      std::vector<mpz_class> dE;
      for (size_t s = 1; s < E.size(); ++s) dE.push_back(static_cast<long>(s) * E[s]);
      mpz_class disc = intpoly::formal_resultant(E, dE);
      assert(disc != 0);
      sig = vp_mpz(disc, p);
      vd_l = static_cast<long>(cand.e()) * sig;
    }
    int max_depth = static_cast<int>((cand.e() + 2) * (vd_l + 1) + 2);
    bool dup = false;
    for (const ClassRep& cr : classes) {
      if (cr.e != cand.e() || cr.f != cand.f() || cr.disc_sig != sig) continue;
      if (same_totally_ramified_class(all[cr.index], cand, max_depth)) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      classes.push_back({i, cand.e(), cand.f(), sig});
      out.push_back(cand);
    }
  }
  return out;
}

const std::vector<LocalField>& distinct_odd_extensions_cached(Limb p, unsigned max_degree,
                                                              int precision) {
  static std::mutex mu;
  static std::map<std::tuple<Limb, unsigned, int>, std::vector<LocalField>> cache;
  // Quantize precision so the cache stays small and references stay valid.
  int bucket = 8;
  while (bucket < precision) bucket *= 2;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, max_degree, bucket);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, distinct_odd_extensions(p, max_degree, bucket)).first;
  return it->second;
}

}  // namespace oddjac::qp

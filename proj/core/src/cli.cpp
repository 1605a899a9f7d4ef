// Command line front end. Subcommand tree:
//
//   curve parity      parity of the Shafarevich-Tate group from the
//                     deficient-place count of y^2 = f(x) over Q
//   curve deficient   the deficient places themselves (or one given place)
//   density s-inf     Monte Carlo density of curves with no real point
//   density s-p       Monte Carlo density of p-adically deficient curves
//   density q-n       density of degree-<= n real polynomials with no root
//   density rho       local density table + product-formula interval for the
//                     density of curves with odd Jacobian
//   density rho-direct  direct global sample of parity verdicts
//   density eta       nonsquare-measure constant of the degree-j unramified
//                     extension of Q_2 (conventional series or exact)
//   density coprime   coprimality probability of random binary forms mod p
//   density bounds    exact two-sided bounds for a local density
//   group check       validate a pairing-group file, report parity and T
//   group enumerate   all pairing classes on 2-groups up to an order bound
//
// Exit codes: 0 decided/success, 1 usage or input error, 2 completed but a
// decision stayed undecided or an estimate had to be flagged.
//
// Stochastic subcommands require an explicit --seed; nothing is ever seeded
// from the clock, so identical invocations produce identical bytes.
#include "oddjac/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "oddjac/ctgroup.hpp"
#include "oddjac/density.hpp"
#include "oddjac/global.hpp"
#include "oddjac/intfactor.hpp"
#include "oddjac/locsolve.hpp"
#include "oddjac/qp.hpp"

namespace oddjac::cli {
namespace {

using json = nlohmann::ordered_json;
using locsolve::Limb;

// ---------------------------------------------------------------------------
// Formatting helpers.

std::string q_str(const mpq_class& q) { return q.get_str(); }
std::string z_str(const mpz_class& z) { return z.get_str(); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> z_strings(const std::vector<mpz_class>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z_str(z));
  return out;
}

const char* decision_str(locsolve::Decision d) {
  switch (d) {
    case locsolve::Decision::Deficient: return "Deficient";
    case locsolve::Decision::NotDeficient: return "NotDeficient";
    case locsolve::Decision::Undecided: break;
  }
  return "Undecided";
}

const char* why_str(locsolve::Why w) {
  switch (w) {
    case locsolve::Why::OddGenusPencil: return "odd-genus";
    case locsolve::Why::IntegerSquareConstant: return "integer-square-constant";
    case locsolve::Why::ResidueScreen: return "residue-screen";
    case locsolve::Why::DiscValuationBound: return "disc-valuation-bound";
    case locsolve::Why::CertifiedDecomposition: return "certified-decomposition";
    case locsolve::Why::PointFound: return "point-found";
    case locsolve::Why::ExtensionExhaustion: return "extension-exhaustion";
    case locsolve::Why::NegativeDefinite: return "negative-definite";
    case locsolve::Why::RealPoint: return "real-point";
    case locsolve::Why::PrecisionWall: break;
  }
  return "precision-wall";
}

// ---------------------------------------------------------------------------
// JSON renderers. All keys snake_case; exact rationals and big integers are
// emitted as reduced "num/den" / decimal strings, never as floats.

json witness_json(const locsolve::PointWitness& w) {
  json j;
  j["field"] = w.field.describe();
  j["chart"] = w.chart;
  j["coord"] = w.field.to_string(w.coord);
  j["y"] = w.field.to_string(w.y);
  return j;
}

json certificate_json(const locsolve::ModPCertificate& cert) {
  json j;
  j["p"] = cert.p;
  j["u"] = z_str(cert.u);
  j["h"] = z_strings(cert.h);
  j["j"] = z_strings(cert.j);
  return j;
}

json verdict_json(const locsolve::DeficiencyVerdict& v) {
  json j;
  j["place"] = v.place;
  j["decision"] = decision_str(v.decision);
  j["why"] = why_str(v.why);
  if (!v.detail.empty()) j["detail"] = v.detail;
  if (v.witness) j["witness"] = witness_json(*v.witness);
  if (v.certificate) j["certificate"] = certificate_json(*v.certificate);
  if (!v.searched_fields.empty()) j["searched_fields"] = v.searched_fields;
  return j;
}

json estimate_json(const density::Estimate& e) {
  json j;
  j["value"] = e.value;
  j["std_error"] = e.std_error;
  j["n_samples"] = e.n_samples;
  j["n_undecided"] = e.n_undecided;
  j["seed"] = e.seed;
  j["config"] = e.config;
  j["flagged"] = e.flagged;
  return j;
}

json bounds_json(const density::BoundPair& b) {
  json j;
  j["lower"] = q_str(b.lower);
  j["upper"] = q_str(b.upper);
  return j;
}

json interval_json(const density::Interval& iv) {
  json j;
  j["lo"] = iv.lo;
  j["hi"] = iv.hi;
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Human renderers.

void print_estimate(std::ostream& out, const std::string& label, const density::Estimate& e) {
  out << label << " = " << fmt(e.value) << " +/- " << fmt(e.std_error) << "  [n=" << e.n_samples
      << ", undecided=" << e.n_undecided << ", seed=" << e.seed << "]"
      << (e.flagged ? "  FLAGGED" : "") << "\n";
}

void print_verdict(std::ostream& out, const locsolve::DeficiencyVerdict& v) {
  out << "place " << v.place << ": " << decision_str(v.decision) << " (" << why_str(v.why) << ")";
  if (!v.detail.empty()) out << " -- " << v.detail;
  out << "\n";
  if (v.witness) {
    const auto& w = *v.witness;
    out << "  point: " << w.field.describe() << ", chart " << w.chart
        << ", coord = " << w.field.to_string(w.coord) << ", y = " << w.field.to_string(w.y)
        << "\n";
  }
  if (v.certificate) {
    const auto& c = *v.certificate;
    out << "  certificate: f = u*h^2 + " << c.p << "*j, u = " << z_str(c.u) << ", h = ["
        << join(z_strings(c.h), ", ") << "], j = [" << join(z_strings(c.j), ", ") << "]\n";
  }
  if (!v.searched_fields.empty())
    out << "  searched: " << join(v.searched_fields, ", ") << "\n";
}

std::string places_or_none(const std::vector<std::string>& places) {
  return places.empty() ? std::string("(none)") : join(places, ", ");
}

// ---------------------------------------------------------------------------
// Shared argument bundles.

struct CurveArgs {
  int genus = 2;
  std::string coeffs;
  std::string factor_mode = "rigorous";
  std::string trial_bound = "1000000";
  int precision_cap = 1 << 14;
};

// Attach the flags every curve subcommand shares.
void add_curve_flags(CLI::App* sub, CurveArgs& a) {
  sub->add_option("--genus", a.genus, "Genus g of the curve")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  sub->add_option("--coeffs", a.coeffs,
                  "Comma-separated integer coefficients a0,a1,...,a_{2g+2} of "
                  "f(x) = a0 + a1*x + ... + a_{2g+2}*x^{2g+2}. The CONSTANT "
                  "term a0 comes FIRST; exactly 2g+3 values are required.")
      ->required();
  sub->add_option("--factor-mode", a.factor_mode,
                  "Discriminant factorization: rigorous (complete) or heuristic "
                  "(trial division with disclosed cofactor)")
      ->check(CLI::IsMember({"rigorous", "heuristic"}))
      ->capture_default_str();
  sub->add_option("--trial-bound", a.trial_bound,
                  "Trial-division bound for heuristic factorization")
      ->capture_default_str();
  sub->add_option("--precision-cap", a.precision_cap,
                  "Working-precision cap (p-adic digits) for local point searches")
      ->capture_default_str();
}

std::vector<mpz_class> parse_coeffs(const std::string& text, int genus) {
  std::vector<mpz_class> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto first = tok.find_first_not_of(" \t");
    const auto last = tok.find_last_not_of(" \t");
    tok = first == std::string::npos ? std::string() : tok.substr(first, last - first + 1);
    try {
      out.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("--coeffs: '" + tok + "' is not an integer");
    }
  }
  const std::size_t want = 2 * static_cast<std::size_t>(genus) + 3;
  if (out.size() != want)
    throw std::invalid_argument(
        "--coeffs: expected " + std::to_string(want) + " integers for genus " +
        std::to_string(genus) + " (2g+3 coefficients of f, constant term a0 first), got " +
        std::to_string(out.size()));
  return out;
}

global::GlobalOptions make_options(const CurveArgs& a) {
  global::GlobalOptions opt;
  opt.factor_mode =
      a.factor_mode == "heuristic" ? global::FactorMode::Heuristic : global::FactorMode::Rigorous;
  try {
    opt.trial_bound = mpz_class(a.trial_bound);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("--trial-bound: '" + a.trial_bound + "' is not an integer");
  }
  if (opt.trial_bound < 2) throw std::invalid_argument("--trial-bound: must be at least 2");
  opt.search.precision_cap = a.precision_cap;
  return opt;
}

json curve_header_json(const char* command, const global::ParityReport& r) {
  json j;
  j["command"] = command;
  j["genus"] = r.genus;
  j["coefficients"] = z_strings(r.coefficients);
  return j;
}

// ---------------------------------------------------------------------------
// curve parity

int cmd_curve_parity(const CurveArgs& a, bool json_out, std::ostream& out) {
  const auto curve = locsolve::make_curve(a.genus, parse_coeffs(a.coeffs, a.genus));
  const auto report = global::parity(curve, make_options(a));
  if (json_out) {
    json j = curve_header_json("curve parity", report);
    j["verdict"] = global::to_string(report.verdict);
    j["decided"] = report.decided;
    j["N"] = report.N;
    j["pairing_value"] = q_str(report.pairing_value);
    j["deficient_places"] = report.deficient_places;
    j["undecided_places"] = report.undecided_places;
    j["factorization_mode"] = global::to_string(report.factorization_mode);
    j["scan_complete"] = report.scan_complete;
    j["unfactored"] = z_str(report.unfactored);
    json places = json::array();
    for (const auto& v : report.place_verdicts) places.push_back(verdict_json(v));
    j["places"] = places;
    if (!report.note.empty()) j["note"] = report.note;
    emit(out, j);
  } else {
    out << "genus " << report.genus << " curve, coefficients ["
        << join(z_strings(report.coefficients), ", ") << "] (constant term first)\n";
    out << "verdict: " << global::to_string(report.verdict)
        << (report.decided ? "" : " (UNDECIDED: verdict covers only the certified places)")
        << "\n";
    out << "deficient places (N = " << report.N << "): " << places_or_none(report.deficient_places)
        << "\n";
    out << "pairing <c,c> = " << q_str(report.pairing_value) << " in Q/Z\n";
    if (!report.undecided_places.empty())
      out << "undecided places: " << join(report.undecided_places, ", ") << "\n";
    out << "factorization: " << global::to_string(report.factorization_mode)
        << (report.scan_complete ? ", candidate scan complete"
                                 : ", candidate scan INCOMPLETE, unfactored cofactor " +
                                       z_str(report.unfactored))
        << "\n";
    for (const auto& v : report.place_verdicts) print_verdict(out, v);
    if (!report.note.empty()) out << "note: " << report.note << "\n";
  }
  return report.decided ? 0 : 2;
}

// ---------------------------------------------------------------------------
// curve deficient

void require_prime(Limb p, const char* flag) {
  if (p < 2 || !intfactor::is_probable_prime(mpz_class(static_cast<unsigned long>(p))))
    throw std::invalid_argument(std::string(flag) + ": " + std::to_string(p) + " is not a prime");
}

Limb parse_prime(const std::string& text) {
  Limb p = 0;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    p = static_cast<Limb>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("--place: expected 'inf' or a prime, got '" + text + "'");
  }
  require_prime(p, "--place");
  return p;
}

int cmd_curve_deficient(const CurveArgs& a, const std::string& place, bool json_out,
                        std::ostream& out) {
  const auto curve = locsolve::make_curve(a.genus, parse_coeffs(a.coeffs, a.genus));
  const auto opt = make_options(a);

  if (!place.empty()) {  // single-place query
    const locsolve::DeficiencyVerdict v = place == "inf"
                                              ? locsolve::deficient_at_infinity(curve)
                                              : locsolve::deficient_at_finite(
                                                    curve, parse_prime(place), opt.search);
    if (json_out) {
      json j;
      j["command"] = "curve deficient";
      j["genus"] = curve.genus;
      j["coefficients"] = z_strings(curve.a);
      j["place"] = v.place;
      if (v.decision != locsolve::Decision::Undecided)
        j["deficient"] = v.decision == locsolve::Decision::Deficient;
      j["verdict"] = verdict_json(v);
      emit(out, j);
    } else {
      print_verdict(out, v);
    }
    return v.decision == locsolve::Decision::Undecided ? 2 : 0;
  }

  const auto scan = global::deficient_places(curve, opt);
  const bool settled = scan.undecided_places.empty() && scan.scan.complete;
  if (json_out) {
    json j;
    j["command"] = "curve deficient";
    j["genus"] = curve.genus;
    j["coefficients"] = z_strings(curve.a);
    j["deficient_places"] = scan.deficient_places;
    j["undecided_places"] = scan.undecided_places;
    j["candidate_primes"] = scan.scan.primes;
    j["factorization_mode"] = global::to_string(scan.scan.mode);
    j["scan_complete"] = scan.scan.complete;
    j["unfactored"] = z_str(scan.scan.unfactored);
    json places = json::array();
    for (const auto& v : scan.verdicts) places.push_back(verdict_json(v));
    j["places"] = places;
    emit(out, j);
  } else {
    out << "deficient places: " << places_or_none(scan.deficient_places) << "\n";
    if (!scan.undecided_places.empty())
      out << "undecided places: " << join(scan.undecided_places, ", ") << "\n";
    if (!scan.scan.complete)
      out << "candidate scan INCOMPLETE, unfactored cofactor " << z_str(scan.scan.unfactored)
          << "\n";
    for (const auto& v : scan.verdicts) print_verdict(out, v);
  }
  return settled ? 0 : 2;
}

// ---------------------------------------------------------------------------
// density subcommands

struct SampleArgs {
  int genus = 2;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

void add_sample_flags(CLI::App* sub, SampleArgs& a, bool with_genus = true) {
  if (with_genus)
    sub->add_option("--genus", a.genus, "Genus g")->check(CLI::Range(0, 30))->capture_default_str();
  sub->add_option("--samples", a.samples, "Number of Monte Carlo samples")
      ->required()
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.seed,
                  "RNG seed (required: runs are reproducible, never clock-seeded)")
      ->required();
}

int finish_estimate(const density::Estimate& e, const char* command, json extra, bool json_out,
                    const std::string& label, std::ostream& out) {
  if (json_out) {
    json j;
    j["command"] = command;
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["estimate"] = estimate_json(e);
    emit(out, j);
  } else {
    print_estimate(out, label, e);
  }
  return e.flagged ? 2 : 0;
}

int cmd_density_s_inf(const SampleArgs& a, bool json_out, std::ostream& out) {
  const auto e = density::estimate_s_inf(a.genus, a.samples, a.seed);
  json extra;
  extra["genus"] = a.genus;
  return finish_estimate(e, "density s-inf", std::move(extra), json_out,
                         "s_inf(genus " + std::to_string(a.genus) + ")", out);
}

int cmd_density_s_p(const SampleArgs& a, Limb p, int precision_cap, bool json_out,
                    std::ostream& out) {
  require_prime(p, "--p");
  density::SamplingPolicy policy;
  policy.precision_cap = precision_cap;
  const auto e = density::estimate_s_p(a.genus, p, a.samples, a.seed, policy);
  json extra;
  extra["genus"] = a.genus;
  extra["p"] = p;
  if (a.genus % 2 == 0 && p > 2) {
    density::BoundPair b = density::prop17_bounds(a.genus, p);
    if (a.genus == 2) {
      const density::BoundPair r = density::refined_genus2_bounds(p);
      if (r.lower > b.lower) b.lower = r.lower;
      if (r.upper < b.upper) b.upper = r.upper;
    }
    extra["bounds"] = bounds_json(b);
  }
  return finish_estimate(e, "density s-p", std::move(extra), json_out,
                         "s_" + std::to_string(p) + "(genus " + std::to_string(a.genus) + ")",
                         out);
}

int cmd_density_q_n(int degree, const SampleArgs& a, bool json_out, std::ostream& out) {
  const auto e = density::estimate_q_n(degree, a.samples, a.seed);
  json extra;
  extra["degree"] = degree;
  return finish_estimate(e, "density q-n", std::move(extra), json_out,
                         "q_" + std::to_string(degree), out);
}

json table_entry_json(const density::TableEntry& entry) {
  json j;
  if (entry.estimate) j["estimate"] = estimate_json(*entry.estimate);
  if (entry.bounds) j["bounds"] = bounds_json(*entry.bounds);
  j["interval"] = interval_json(density::entry_interval(entry));
  return j;
}

int cmd_density_rho(const SampleArgs& a, Limb prime_bound, int precision_cap, bool json_out,
                    std::ostream& out) {
  density::SamplingPolicy policy;
  policy.precision_cap = precision_cap;
  const auto table =
      density::measure_table(a.genus, prime_bound, a.samples, a.samples, a.seed, policy);
  std::string offender;
  const bool table_valid = density::validate_table(table, &offender);
  const auto iv = density::rho_interval(a.genus, table, prime_bound);
  bool flagged = table.s_inf.flagged;
  for (const auto& [p, entry] : table.s_p)
    if (entry.estimate && entry.estimate->flagged) flagged = true;
  if (json_out) {
    json j;
    j["command"] = "density rho";
    j["genus"] = a.genus;
    j["prime_bound"] = prime_bound;
    j["rho"] = interval_json(iv);
    j["table_valid"] = table_valid;
    if (!table_valid) j["offender"] = offender;
    j["s_inf"] = estimate_json(table.s_inf);
    json sp;
    for (const auto& [p, entry] : table.s_p) sp[std::to_string(p)] = table_entry_json(entry);
    j["s_p"] = sp;
    j["tail_policy"] = table.tail_policy;
    emit(out, j);
  } else {
    out << "rho_" << a.genus << " in [" << fmt(iv.lo) << ", " << fmt(iv.hi)
        << "]  (local product over v <= " << prime_bound << ", outward-rounded tail)\n";
    print_estimate(out, "  s_inf", table.s_inf);
    for (const auto& [p, entry] : table.s_p) {
      if (entry.estimate) print_estimate(out, "  s_" + std::to_string(p), *entry.estimate);
      if (entry.bounds)
        out << "  s_" << p << " in [" << q_str(entry.bounds->lower) << ", "
            << q_str(entry.bounds->upper) << "]\n";
    }
    if (!table_valid) out << "TABLE INVALID: " << offender << "\n";
  }
  return flagged || !table_valid ? 2 : 0;
}

int cmd_density_rho_direct(const SampleArgs& a, const std::string& height_str,
                           const std::string& factor_mode, const std::string& trial_bound,
                           bool json_out, std::ostream& out) {
  mpz_class height;
  try {
    height = mpz_class(height_str);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("--height: '" + height_str + "' is not an integer");
  }
  if (height < 1) throw std::invalid_argument("--height: must be at least 1");
  global::GlobalOptions opt = density::default_rho_options();
  opt.factor_mode =
      factor_mode == "rigorous" ? global::FactorMode::Rigorous : global::FactorMode::Heuristic;
  try {
    opt.trial_bound = mpz_class(trial_bound);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("--trial-bound: '" + trial_bound + "' is not an integer");
  }
  const auto rd = density::estimate_rho_direct(a.genus, height, a.samples, a.seed, opt);
  if (json_out) {
    json j;
    j["command"] = "density rho-direct";
    j["genus"] = a.genus;
    j["height"] = z_str(height);
    j["estimate"] = estimate_json(rd.est);
    json hist;
    for (const auto& [places, count] : rd.histogram) hist[join(places, ",")] = count;
    j["histogram"] = hist;
    j["n_singular"] = rd.n_singular;
    j["n_heuristic"] = rd.n_heuristic;
    emit(out, j);
  } else {
    print_estimate(out, "rho_" + std::to_string(a.genus) + " (direct, height " + z_str(height) + ")",
                   rd.est);
    out << "  singular draws discarded: " << rd.n_singular
        << ", decided under disclosed cofactor: " << rd.n_heuristic << "\n";
    for (const auto& [places, count] : rd.histogram)
      out << "  deficient at {" << (places.empty() ? "" : join(places, ", ")) << "}: " << count
          << "\n";
  }
  return rd.est.flagged ? 2 : 0;
}

int cmd_density_eta(int jj, bool exact, bool json_out, std::ostream& out) {
  const mpq_class value = exact ? density::eta_exact(jj) : density::eta(jj);
  if (json_out) {
    json j;
    j["command"] = "density eta";
    j["j"] = jj;
    j["exact"] = exact;
    j["value"] = q_str(value);
    emit(out, j);
  } else {
    out << q_str(value) << "\n";
  }
  return 0;
}

int cmd_density_coprime(Limb p, int m, int n, bool brute, bool json_out, std::ostream& out) {
  require_prime(p, "--p");
  const mpq_class prob = density::coprime_probability(p, m, n);
  std::optional<mpq_class> brute_val;
  if (brute) brute_val = density::coprime_brute_force(p, m, n);
  if (json_out) {
    json j;
    j["command"] = "density coprime";
    j["p"] = p;
    j["m"] = m;
    j["n"] = n;
    j["probability"] = q_str(prob);
    if (brute_val) {
      j["brute_force"] = q_str(*brute_val);
      j["agree"] = *brute_val == prob;
    }
    emit(out, j);
  } else {
    out << q_str(prob) << "\n";
    if (brute_val)
      out << "brute force: " << q_str(*brute_val) << (*brute_val == prob ? " (agrees)" : " (DISAGREES)")
          << "\n";
  }
  return 0;
}

int cmd_density_bounds(int genus, Limb p, bool json_out, std::ostream& out) {
  require_prime(p, "--p");
  json j;
  j["command"] = "density bounds";
  j["genus"] = genus;
  j["p"] = p;
  density::BoundPair best;
  std::optional<density::BoundPair> general, refined;
  if (p == 2) {
    if (genus != 2)
      throw std::invalid_argument(
          "--p 2: an exact envelope at p = 2 is only available for genus 2");
    best.lower = 0;
    best.upper = density::eta(1) * density::eta(1) * density::eta(1) * density::eta(3);
  } else {
    general = density::prop17_bounds(genus, p);  // rejects odd genus
    best = *general;
    if (genus == 2) {
      refined = density::refined_genus2_bounds(p);
      if (refined->lower > best.lower) best.lower = refined->lower;
      if (refined->upper < best.upper) best.upper = refined->upper;
    }
  }
  if (json_out) {
    j["bounds"] = bounds_json(best);
    if (general) j["general"] = bounds_json(*general);
    if (refined) j["refined"] = bounds_json(*refined);
    emit(out, j);
  } else {
    out << "s_{" << genus << "," << p << "} in [" << q_str(best.lower) << ", "
        << q_str(best.upper) << "]\n";
    if (general)
      out << "  general: [" << q_str(general->lower) << ", " << q_str(general->upper) << "]\n";
    if (refined)
      out << "  refined: [" << q_str(refined->lower) << ", " << q_str(refined->upper) << "]\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// group subcommands

std::string t_string(const std::vector<unsigned long>& t) {
  if (t.empty()) return "1";
  std::vector<std::string> parts;
  parts.reserve(t.size());
  for (auto f : t) parts.push_back(std::to_string(f));
  return join(parts, " x ");
}

json elements_json(const std::vector<ctgroup::Element>& elems) {
  json arr = json::array();
  for (const auto& e : elems) arr.push_back(z_strings(e));
  return arr;
}

json decomposition_json(const ctgroup::DecompositionWitness& w) {
  json j;
  j["parity"] = ctgroup::to_string(w.parity);
  j["c_self_pairing"] = q_str(w.c_self_pairing);
  j["alternating"] = w.alternating;
  j["n"] = w.n;
  j["v_basis"] = elements_json(w.v_basis);
  j["v_orders"] = w.v_orders;
  j["complement_gens"] = elements_json(w.complement_gens);
  j["t_invariants"] = w.t_invariants;
  j["T"] = t_string(w.t_invariants);
  return j;
}

int cmd_group_check(const std::string& path, bool json_out, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("--file: cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const ctgroup::PairedGroup pg = ctgroup::paired_group_from_json(buffer.str());

  if (const auto violation = ctgroup::validate(pg)) {
    if (json_out) {
      json j;
      j["command"] = "group check";
      j["valid"] = false;
      json v;
      v["axiom"] = violation->axiom;
      v["detail"] = violation->detail;
      v["witness"] = z_strings(violation->witness);
      j["violation"] = v;
      emit(out, j);
    } else {
      out << "valid: no\naxiom violated: " << violation->axiom << "\ndetail: " << violation->detail
          << "\n";
      if (!violation->witness.empty())
        out << "witness: (" << join(z_strings(violation->witness), ", ") << ")\n";
    }
    return 0;  // a certified violation is a decided answer
  }

  const auto w = ctgroup::decompose(pg);
  if (json_out) {
    json j;
    j["command"] = "group check";
    j["valid"] = true;
    j["parity"] = ctgroup::to_string(w.parity);
    j["T"] = t_string(w.t_invariants);
    j["order"] = z_str(pg.order());
    j["invariant_factors"] = pg.invariant_factors;
    j["c"] = z_strings(pg.c);
    j["decomposition"] = decomposition_json(w);
    emit(out, j);
  } else {
    out << "valid: yes\n";
    out << "parity: " << ctgroup::to_string(w.parity) << "  (<c,c> = " << q_str(w.c_self_pairing)
        << ")\n";
    out << "T: " << t_string(w.t_invariants) << "  (group is "
        << (w.parity == ctgroup::Parity::Odd ? "Z/2 x T x T" : "T x T") << ")\n";
    out << "order: " << z_str(pg.order()) << ", invariant factors";
    for (auto f : pg.invariant_factors) out << " " << f;
    out << "\n";
  }
  return 0;
}

int cmd_group_enumerate(unsigned long order_bound, const ctgroup::EnumerateOptions& opts,
                        bool json_out, std::ostream& out) {
  const auto groups = ctgroup::enumerate_paired_groups(order_bound, opts);
  if (json_out) {
    json j;
    j["command"] = "group enumerate";
    j["order_bound"] = order_bound;
    j["count"] = groups.size();
    json arr = json::array();
    for (const auto& pg : groups) {
      const auto w = ctgroup::decompose(pg);
      json g = json::parse(ctgroup::paired_group_to_json(pg, /*pretty=*/false));
      g["order"] = z_str(pg.order());
      g["parity"] = ctgroup::to_string(w.parity);
      g["T"] = t_string(w.t_invariants);
      arr.push_back(g);
    }
    j["groups"] = arr;
    emit(out, j);
  } else {
    out << groups.size() << " pairing classes on 2-groups of order <= " << order_bound << "\n";
    std::size_t i = 0;
    for (const auto& pg : groups) {
      const auto w = ctgroup::decompose(pg);
      out << "[" << ++i << "] order " << z_str(pg.order()) << ", invariant factors";
      for (auto f : pg.invariant_factors) out << " " << f;
      out << ", c = (" << join(z_strings(pg.c), ", ") << "), parity "
          << ctgroup::to_string(w.parity) << ", T = " << t_string(w.t_invariants) << "\n";
    }
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Argument wiring.

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Exact local-global toolkit for hyperelliptic curves y^2 = f(x) over Q:\n"
      "deficient places, parity of the Shafarevich-Tate group, deficiency\n"
      "densities, and the structure theory of finite groups with a\n"
      "Q/Z-valued pairing."};
  app.require_subcommand(1);
  bool json_out = false;
  int rc = 0;

  // -- curve ----------------------------------------------------------------
  auto* curve = app.add_subcommand("curve", "Analyze one curve over Q");
  curve->require_subcommand(1);

  CurveArgs parity_args;
  auto* curve_parity = curve->add_subcommand(
      "parity", "Parity of the Shafarevich-Tate group from the deficient-place count");
  add_curve_flags(curve_parity, parity_args);
  curve_parity->add_flag("--json", json_out, "Emit JSON");
  curve_parity->callback([&]() { rc = cmd_curve_parity(parity_args, json_out, out); });

  CurveArgs deficient_args;
  std::string deficient_place;
  auto* curve_deficient =
      curve->add_subcommand("deficient", "Deficient places of the curve (all, or one --place)");
  add_curve_flags(curve_deficient, deficient_args);
  curve_deficient->add_option("--place", deficient_place,
                              "Single place to decide: 'inf' or a prime (default: scan all "
                              "candidate places)");
  curve_deficient->add_flag("--json", json_out, "Emit JSON");
  curve_deficient->callback(
      [&]() { rc = cmd_curve_deficient(deficient_args, deficient_place, json_out, out); });

  // -- density --------------------------------------------------------------
  auto* dens = app.add_subcommand("density", "Deficiency densities and exact constants");
  dens->require_subcommand(1);

  SampleArgs sinf_args;
  auto* s_inf = dens->add_subcommand("s-inf", "Density of curves with no real point");
  add_sample_flags(s_inf, sinf_args);
  s_inf->add_flag("--json", json_out, "Emit JSON");
  s_inf->callback([&]() { rc = cmd_density_s_inf(sinf_args, json_out, out); });

  SampleArgs sp_args;
  Limb sp_p = 2;
  int sp_cap = 96;
  auto* s_p = dens->add_subcommand("s-p", "Density of curves deficient at the prime p");
  add_sample_flags(s_p, sp_args);
  s_p->add_option("--p", sp_p, "The prime p")->required()->check(CLI::PositiveNumber);
  s_p->add_option("--precision-cap", sp_cap, "p-adic digit cap per sample before it is counted undecided")
      ->capture_default_str();
  s_p->add_flag("--json", json_out, "Emit JSON");
  s_p->callback([&]() { rc = cmd_density_s_p(sp_args, sp_p, sp_cap, json_out, out); });

  SampleArgs qn_args;
  int qn_degree = 6;
  auto* q_n = dens->add_subcommand("q-n", "Density of real polynomials without a real root");
  add_sample_flags(q_n, qn_args, /*with_genus=*/false);
  q_n->add_option("--degree", qn_degree, "Formal degree of the sampled polynomials")
      ->required()
      ->check(CLI::Range(1, 64));
  q_n->add_flag("--json", json_out, "Emit JSON");
  q_n->callback([&]() { rc = cmd_density_q_n(qn_degree, qn_args, json_out, out); });

  SampleArgs rho_args;
  Limb rho_prime_bound = 100;
  int rho_cap = 96;
  auto* rho = dens->add_subcommand(
      "rho", "Interval for the density of curves with odd Jacobian (local product formula)");
  add_sample_flags(rho, rho_args);
  rho->add_option("--prime-bound", rho_prime_bound, "Largest prime measured or bounded exactly")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  rho->add_option("--precision-cap", rho_cap, "p-adic digit cap for the samplers")
      ->capture_default_str();
  rho->add_flag("--json", json_out, "Emit JSON");
  rho->callback(
      [&]() { rc = cmd_density_rho(rho_args, rho_prime_bound, rho_cap, json_out, out); });

  SampleArgs rd_args;
  std::string rd_height, rd_mode = "heuristic", rd_trial = "10000";
  auto* rho_direct = dens->add_subcommand(
      "rho-direct", "Direct global sample: parity verdicts of random integral curves");
  add_sample_flags(rho_direct, rd_args);
  rho_direct->add_option("--height", rd_height, "Coefficients drawn uniformly from [-height, height]")
      ->required();
  rho_direct->add_option("--factor-mode", rd_mode, "Discriminant factorization mode")
      ->check(CLI::IsMember({"rigorous", "heuristic"}))
      ->capture_default_str();
  rho_direct->add_option("--trial-bound", rd_trial, "Trial-division bound")->capture_default_str();
  rho_direct->add_flag("--json", json_out, "Emit JSON");
  rho_direct->callback([&]() {
    rc = cmd_density_rho_direct(rd_args, rd_height, rd_mode, rd_trial, json_out, out);
  });

  int eta_j = 1;
  bool eta_exact_flag = false;
  auto* eta = dens->add_subcommand(
      "eta", "Nonsquare-measure constant of the degree-j unramified extension of Q_2");
  eta->add_option("--j", eta_j, "Extension degree j >= 1")->required()->check(CLI::Range(1, 62));
  eta->add_flag("--exact", eta_exact_flag,
                "Exact Haar measure instead of the conventional series constant");
  eta->add_flag("--json", json_out, "Emit JSON");
  eta->callback([&]() { rc = cmd_density_eta(eta_j, eta_exact_flag, json_out, out); });

  Limb cop_p = 2;
  int cop_m = 1, cop_n = 1;
  bool cop_brute = false;
  auto* coprime = dens->add_subcommand(
      "coprime", "Probability that two random binary forms over F_p are coprime");
  coprime->add_option("--p", cop_p, "The prime p")->required()->check(CLI::PositiveNumber);
  coprime->add_option("--m", cop_m, "Formal degree of the first form")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  coprime->add_option("--n", cop_n, "Formal degree of the second form")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  coprime->add_flag("--brute", cop_brute, "Cross-check by exhaustive enumeration");
  coprime->add_flag("--json", json_out, "Emit JSON");
  coprime->callback(
      [&]() { rc = cmd_density_coprime(cop_p, cop_m, cop_n, cop_brute, json_out, out); });

  int bounds_genus = 2;
  Limb bounds_p = 3;
  auto* bounds = dens->add_subcommand("bounds", "Exact two-sided bounds for a local density");
  bounds->add_option("--genus", bounds_genus, "Genus g (even)")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  bounds->add_option("--p", bounds_p, "The prime p")->required()->check(CLI::PositiveNumber);
  bounds->add_flag("--json", json_out, "Emit JSON");
  bounds->callback([&]() { rc = cmd_density_bounds(bounds_genus, bounds_p, json_out, out); });

  // -- group ----------------------------------------------------------------
  auto* group = app.add_subcommand("group", "Finite groups with a Q/Z-valued pairing");
  group->require_subcommand(1);

  std::string group_file;
  auto* group_check = group->add_subcommand(
      "check", "Validate a pairing-group JSON file; report parity and the T x T split");
  group_check->add_option("--file", group_file, "Path to the JSON description")->required();
  group_check->add_flag("--json", json_out, "Emit JSON");
  group_check->callback([&]() { rc = cmd_group_check(group_file, json_out, out); });

  unsigned long enum_bound = 16;
  ctgroup::EnumerateOptions enum_opts;
  std::string enum_filter = "all";
  auto* group_enum = group->add_subcommand(
      "enumerate", "Every pairing class on abelian 2-groups up to an order bound");
  group_enum->add_option("--order-bound", enum_bound, "Largest group order (2..1024)")
      ->required()
      ->check(CLI::Range(2ul, 1024ul));
  group_enum->add_option("--max-fills", enum_opts.max_fills_per_shape,
                         "Exhaustive Gram-fill budget per shape")
      ->capture_default_str();
  group_enum->add_option("--random-fills", enum_opts.random_fills_per_shape,
                         "Random fills drawn when a shape exceeds the budget")
      ->capture_default_str();
  group_enum->add_option("--seed", enum_opts.seed, "Seed for the random fills")
      ->capture_default_str();
  group_enum->add_option("--c-filter", enum_filter, "Keep all classes, or only c = 0 / c != 0")
      ->check(CLI::IsMember({"all", "trivial", "nontrivial"}))
      ->capture_default_str();
  group_enum->add_flag("--json", json_out, "Emit JSON");
  group_enum->callback([&]() {
    using CF = ctgroup::EnumerateOptions::CFilter;
    enum_opts.c_filter = enum_filter == "trivial"
                             ? CF::TrivialOnly
                             : enum_filter == "nontrivial" ? CF::NontrivialOnly : CF::All;
    rc = cmd_group_enumerate(enum_bound, enum_opts, json_out, out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;  // help/version succeed; everything else is usage
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace oddjac::cli

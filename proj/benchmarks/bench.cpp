// Microbenchmarks for the hot paths: finite-field polynomial arithmetic,
// exact real-root counting, local deficiency decisions, the p-adic density
// sampler, and the paired-group structure routines.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "oddjac/ctgroup.hpp"
#include "oddjac/density.hpp"
#include "oddjac/fq.hpp"
#include "oddjac/global.hpp"
#include "oddjac/locsolve.hpp"
#include "oddjac/realroots.hpp"
#include "oddjac/rng.hpp"

namespace {

using oddjac::rng::word;

void BM_FindIrreducible(benchmark::State& state) {
  auto p = static_cast<oddjac::fq::Limb>(state.range(0));
  auto m = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oddjac::fq::find_irreducible(p, m));
  }
}
BENCHMARK(BM_FindIrreducible)->Args({3, 3})->Args({101, 3})->Args({10007, 5});

void BM_SquarefreeDecomposition(benchmark::State& state) {
  oddjac::fq::Field F(3, 1);
  auto f = oddjac::fq::poly_from_ints(F, {1, 2, 0, 1, 1, 0, 2, 1});
  auto g = oddjac::fq::poly_mul(F, f, oddjac::fq::poly_mul(F, f, f));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oddjac::fq::squarefree_decomposition(F, g));
  }
}
BENCHMARK(BM_SquarefreeDecomposition);

// Degree-(2g+2) integer polynomials with coefficients in [-H, H], seeded.
std::vector<mpz_class> random_coeffs(int degree, long height, std::uint64_t seed,
                                     std::uint64_t index) {
  std::vector<mpz_class> a(degree + 1);
  for (int i = 0; i <= degree; ++i) {
    const auto w = word(seed, index, static_cast<std::uint64_t>(i));
    a[i] = static_cast<long>(w % (2 * height + 1)) - height;
  }
  return a;
}

// Sturm-chain root counting over a stream of random sextics.
void BM_DistinctRealRoots(benchmark::State& state) {
  const long height = state.range(0);
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto f = random_coeffs(6, height, 0xbe9c5, index++);
    if (f[6] == 0) f[6] = 1;
    benchmark::DoNotOptimize(oddjac::realroots::distinct_real_roots(f));
  }
}
BENCHMARK(BM_DistinctRealRoots)->Arg(10)->Arg(1000000);

void BM_NegativeDefinite(benchmark::State& state) {
  std::uint64_t index = 0;
  for (auto _ : state) {
    auto f = random_coeffs(6, 50, 0xfeed, index++);
    if (f[6] == 0) f[6] = 1;
    benchmark::DoNotOptimize(oddjac::realroots::negative_definite(f));
  }
}
BENCHMARK(BM_NegativeDefinite);

// Whole-curve local decision at one finite place (fast-screen hit rate
// dominates; occasional draws fall through to the full extension search).
void BM_DeficientAtFinite(benchmark::State& state) {
  const auto p = static_cast<oddjac::locsolve::Limb>(state.range(0));
  std::uint64_t index = 0;
  std::vector<oddjac::locsolve::Curve> curves;
  for (int i = 0; i < 64; ++i) {
    for (;;) {
      try {
        curves.push_back(oddjac::locsolve::make_curve(2, random_coeffs(6, 30, 0xcafe, index++)));
        break;
      } catch (const std::invalid_argument&) {  // singular draw, retry
      }
    }
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& c = curves[k++ % curves.size()];
    benchmark::DoNotOptimize(oddjac::locsolve::deficient_at_finite(c, p));
  }
}
BENCHMARK(BM_DeficientAtFinite)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

// A draw that goes all the way to extension exhaustion (deficient at 2).
void BM_ExtensionExhaustion(benchmark::State& state) {
  const auto c = oddjac::locsolve::make_curve(2, {3, 0, 0, 0, 0, 0, 2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(oddjac::locsolve::deficient_at_finite(c, 2));
  }
}
BENCHMARK(BM_ExtensionExhaustion)->Unit(benchmark::kMillisecond);

// Global parity report end to end.
void BM_GlobalParity(benchmark::State& state) {
  const auto c = oddjac::locsolve::make_curve(2, {-1, -1, 0, 0, 0, 0, -1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(oddjac::global::parity(c));
  }
}
BENCHMARK(BM_GlobalParity)->Unit(benchmark::kMicrosecond);

// p-adic sampler throughput (samples per second, including rejected draws).
// The digit cap is kept moderate: the rare draws with high discriminant
// valuation otherwise each run a many-second ramified-cubic search, which
// BM_ExtensionExhaustion already measures in isolation.
void BM_EstimateSp(benchmark::State& state) {
  const auto p = static_cast<oddjac::density::Limb>(state.range(0));
  const auto n = static_cast<std::uint64_t>(state.range(1));
  oddjac::density::SamplingPolicy policy;
  policy.precision_cap = 24;
  policy.undecided_tolerance = 1.0;  // throughput benchmark, never flag
  for (auto _ : state) {
    benchmark::DoNotOptimize(oddjac::density::estimate_s_p(2, p, n, 1, policy));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EstimateSp)->Args({2, 200})->Args({3, 200})->Unit(benchmark::kMillisecond);

void BM_EstimateSInf(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oddjac::density::estimate_s_inf(2, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EstimateSInf)->Arg(1000)->Unit(benchmark::kMillisecond);

// Paired-group machinery: axiom validation and the certified decomposition.
void BM_GroupValidateDecompose(benchmark::State& state) {
  const auto bound = static_cast<unsigned long>(state.range(0));
  const auto groups = oddjac::ctgroup::enumerate_paired_groups(bound);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& pg = groups[k++ % groups.size()];
    benchmark::DoNotOptimize(oddjac::ctgroup::validate(pg));
    benchmark::DoNotOptimize(oddjac::ctgroup::decompose(pg));
  }
}
BENCHMARK(BM_GroupValidateDecompose)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_GroupEnumerate(benchmark::State& state) {
  const auto bound = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oddjac::ctgroup::enumerate_paired_groups(bound));
  }
}
BENCHMARK(BM_GroupEnumerate)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Microbenchmarks for the hot paths: tower certification, Weyl assembly,
// the truncated pencil, and pointwise margin evaluation.

#include <benchmark/benchmark.h>

#include "subcert/quantize.hpp"
#include "subcert/sampling.hpp"
#include "subcert/singular.hpp"
#include "subcert/system_io.hpp"
#include "subcert/verifier.hpp"
#include "subcert/weights.hpp"

using namespace subcert;

static void BM_tower_certify(benchmark::State& state) {
  SystemOfForms sys = example_system(4);
  const std::string digest = system_digest(sys);
  for (auto _ : state) {
    Certificate cert = certify(sys, digest);
    benchmark::DoNotOptimize(cert.lambda_min);
  }
}
BENCHMARK(BM_tower_certify);

static void BM_weyl_quantize(benchmark::State& state) {
  HermiteBasis basis(1, 12, Convention::body);
  PolynomialSymbol q(1);
  q.add_term({2, 0}, 1.0);
  q.add_term({0, 2}, 1.0);
  PolynomialSymbol quartic = q * q;
  for (auto _ : state) {
    OperatorMatrix H2 = weyl_quantize(quartic, basis);
    benchmark::DoNotOptimize(H2.A(0, 0));
  }
}
BENCHMARK(BM_weyl_quantize);

static void BM_rayleigh(benchmark::State& state) {
  SystemOfForms sys{PhaseSpace{2}};
  CMat Q = CMat::Zero(4, 4);
  Q(0, 0) = 1.0;
  Q(2, 2) = 1.0;
  sys.push(QuadraticForm(sys.space, Q), "q");
  for (auto _ : state) {
    const double c = rayleigh_constant(sys, 1.0 / 3.0, 16);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_rayleigh);

static void BM_margin_eval(benchmark::State& state) {
  static const SearchResult res = construct_weight(deep_tower_system(2), 2);
  SampleRegion reg;
  reg.radii = 8;
  reg.directions = 16;
  static const std::vector<Vec> pts = sample_shell_grid(4, reg);
  for (auto _ : state) {
    double worst = 1e300;
    for (const Vec& X : pts) worst = std::min(worst, margin_sample(res.assembly, X).ratio());
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(BM_margin_eval);

BENCHMARK_MAIN();

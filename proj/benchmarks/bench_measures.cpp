#include <random>

#include <benchmark/benchmark.h>

#include "extropy/bivariate.hpp"
#include "extropy/claims.hpp"
#include "extropy/distributions.hpp"
#include "extropy/measures.hpp"

namespace {

extropy::MeasureOptions quadrature_only() {
  extropy::MeasureOptions o;
  o.policy = extropy::MethodPolicy::quadrature;
  return o;
}

void BM_WeightedExtropyGamma(benchmark::State& state) {
  const auto g = extropy::gamma(2.0, 1.0);
  const auto opt = quadrature_only();
  for (auto _ : state) {
    benchmark::DoNotOptimize(extropy::weighted_extropy(g, opt).value);
  }
}
BENCHMARK(BM_WeightedExtropyGamma);

void BM_WeightedResidualCurve(benchmark::State& state) {
  const auto e = extropy::exponential(1.0);
  const auto opt = quadrature_only();
  const auto grid = extropy::default_t_grid(e, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (double t : grid) {
      benchmark::DoNotOptimize(extropy::weighted_residual_extropy(e, t, opt).value);
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_WeightedResidualCurve)->Arg(10)->Arg(50);

void BM_BivariateBetaClosedForm(benchmark::State& state) {
  const auto bd = extropy::bivariate_beta(2.0, 2.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extropy::bivariate_weighted_extropy(bd).value);
  }
}
BENCHMARK(BM_BivariateBetaClosedForm);

void BM_BivariateBetaQuadrature(benchmark::State& state) {
  const auto bd = extropy::bivariate_beta(2.0, 2.0, 2.0);
  auto opt = extropy::bivariate_defaults();
  opt.policy = extropy::MethodPolicy::quadrature;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extropy::bivariate_weighted_extropy(bd, opt).value);
  }
}
BENCHMARK(BM_BivariateBetaQuadrature)->Unit(benchmark::kMillisecond);

void BM_ConvolutionDensity(benchmark::State& state) {
  const auto e = extropy::exponential(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extropy::convolution_density(e, e, 1.5));
  }
}
BENCHMARK(BM_ConvolutionDensity);

void BM_SampleGamma(benchmark::State& state) {
  const auto g = extropy::gamma(2.0, 1.0);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.sample(rng));
  }
}
BENCHMARK(BM_SampleGamma);

}  // namespace

BENCHMARK_MAIN();

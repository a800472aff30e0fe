#include <numbers>

#include <benchmark/benchmark.h>

#include "jacobi/inequalities.hpp"
#include "jacobi/models.hpp"
#include "jacobi/random.hpp"
#include "jacobi/suites.hpp"
#include "jacobi/transverse.hpp"

using namespace jacobi;
constexpr double pi = std::numbers::pi;

static void BM_FundamentalSolution(benchmark::State& state) {
  Rng rng(1);
  const auto sys = random_trig_system(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    FundamentalSolution flow(sys, 0.0, {0.0, 8 * pi});
    benchmark::DoNotOptimize(flow.steps());
  }
}
BENCHMARK(BM_FundamentalSolution)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_IndexScan(benchmark::State& state) {
  Rng rng(2);
  const int m = static_cast<int>(state.range(0));
  const auto sys = random_trig_system(m, rng);
  const FundamentalSolution flow(sys, 0.0, {0.0, 2 * pi});
  const FieldSubspace l = random_lagrangian(sys, 0.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(index_on_interval(flow, l, IntervalSpec::closed(0.0, 2 * pi)).total);
  }
}
BENCHMARK(BM_IndexScan)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_TheoremA(benchmark::State& state) {
  const auto model = make_model(model_names()[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_dimension_bound(model, DimensionTheorem::A).verdict.slack);
  }
}
BENCHMARK(BM_TheoremA)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_TransverseFidelity(benchmark::State& state) {
  const auto model = make_model(model_names()[static_cast<std::size_t>(state.range(0))]);
  const std::vector<IntervalSpec> ivs{IntervalSpec::closed(0, pi)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(transverse_fidelity(model, ivs).curvature_error);
  }
}
BENCHMARK(BM_TransverseFidelity)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_LytchakTrials(benchmark::State& state) {
  SuiteOptions o;
  o.trials = 50;
  o.seed = 3;
  o.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(SuiteKind::lytchak, o).size());
  state.SetItemsProcessed(state.iterations() * o.trials);
}
BENCHMARK(BM_LytchakTrials)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();

// Parallel kernels against their serial references: the p-grid scan of one fit
// and the replication loop of a simulation scenario.
//
//   ./curetail_bench --benchmark_filter=Scan

#include <benchmark/benchmark.h>

#include <vector>

#include "curetail/fit_config.hpp"
#include "curetail/pp_estimators.hpp"
#include "curetail/profile_search.hpp"
#include "curetail/simulation.hpp"

using namespace curetail;

namespace {

struct ScanFixture {
  OrderedSample ordered;
  KaplanMeierCurve curve;
  double p_n = 0.0;

  explicit ScanFixture(std::size_t n) {
    ordered = order_sample(sample_scenario(standard_scenario(3, n, 0.9, 1, 1), 0));
    curve = km_fit(ordered);
    p_n = p_benchmark(curve, ordered);
  }
};

template <bool Parallel>
void BM_Scan(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ScanFixture fx(n);
  const PlotRegression reg(PlottingModel::LogNormal, fx.ordered, fx.curve, n / 5);
  const std::vector<double> grid = open_grid(reg.feasible_lower(), 1.0, 400);
  std::vector<double> out(grid.size());
  const auto f = [&](double p) { return reg.profile(p, 0.2, fx.p_n).loss; };
  for (auto _ : state) {
    if constexpr (Parallel) {
      scan_parallel(grid, std::span<double>(out), f);
    } else {
      scan_serial(grid, std::span<double>(out), f);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}

template <bool Parallel>
void BM_Scenario(benchmark::State& state) {
  const ScenarioSpec spec = standard_scenario(4, static_cast<std::size_t>(state.range(0)), 0.9, 16, 1);
  const std::vector<Estimator> ests = {Estimator::Gumbel, Estimator::LogNormal};
  for (auto _ : state) {
    auto out = Parallel ? run_scenario(spec, ests) : run_scenario_serial(spec, ests);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * spec.reps));
}

}  // namespace

BENCHMARK(BM_Scan<false>)->Name("Scan/serial")->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scan<true>)->Name("Scan/parallel")->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Scenario<false>)->Name("Scenario/serial")->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scenario<true>)->Name("Scenario/parallel")->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

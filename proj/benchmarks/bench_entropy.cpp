#include <benchmark/benchmark.h>

#include "entrokit/density.hpp"
#include "entrokit/estimators.hpp"
#include "entrokit/harness.hpp"
#include "entrokit/models.hpp"

using namespace entrokit;

namespace {

const DistributionModel& normal_model()
{
  static const DistributionModel model = DistributionModel::normal();
  return model;
}

void BM_Sample(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(normal_model().sample(n, 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000);

void BM_KdeEvalGrid(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kernel = KernelSpec::make(KernelFamily::gaussian);
  const DataSet data = normal_model().sample(n, 1);
  const DensityEstimate estimate(data, kernel, 0.3);
  const EvaluationGrid grid = EvaluationGrid::for_estimate(data, kernel, 0.3, 401);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate.eval_grid(grid));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * grid.total_points()));
}
BENCHMARK(BM_KdeEvalGrid)->Arg(1000)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond);

void BM_PluginEntropy(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kernel = KernelSpec::make(KernelFamily::gaussian);
  const DataSet data = normal_model().sample(n, 1);
  const DensityEstimate estimate(data, kernel, 0.3);
  const EvaluationGrid grid = EvaluationGrid::for_estimate(data, kernel, 0.3, 401);
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_plugin(estimate, 0.02, grid));
  }
}
BENCHMARK(BM_PluginEntropy)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Resubstitution(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kernel = KernelSpec::make(KernelFamily::gaussian);
  const DataSet data = normal_model().sample(n, 1);
  const DensityEstimate estimate(data, kernel, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_resubstitution(estimate, 0.02));
  }
}
BENCHMARK(BM_Resubstitution)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_SmoothedDensity(benchmark::State& state)
{
  const auto kernel = KernelSpec::make(KernelFamily::gaussian);
  const std::vector<double> x = { 0.3 };
  for (auto _ : state) {
    benchmark::DoNotOptimize(
      smoothed_density_eval(normal_model().pdf_fn(), kernel, 0.3, x));
  }
}
BENCHMARK(BM_SmoothedDensity);

void BM_CertaintyInterval(benchmark::State& state)
{
  const auto kernel = KernelSpec::make(KernelFamily::gaussian);
  const DataSet data = normal_model().sample(5000, 1);
  const DensityEstimate estimate(data, kernel, 0.3);
  const EvaluationGrid grid = EvaluationGrid::for_estimate(data, kernel, 0.3, 401);
  const SupportBox proxy = estimate_support(data, &normal_model().support());
  for (auto _ : state) {
    benchmark::DoNotOptimize(certainty_interval(estimate, 0.025, grid, proxy));
  }
}
BENCHMARK(BM_CertaintyInterval)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "alphamag/complex.hpp"
#include "alphamag/delaunay.hpp"
#include "alphamag/magnitude.hpp"
#include "alphamag/persistence.hpp"
#include "alphamag/persistent_magnitude.hpp"
#include "alphamag/samplers.hpp"

using namespace alphamag;

static void BM_Delaunay(benchmark::State& state) {
  const PointCloud cloud = sample_circle(static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_2d(cloud));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Delaunay)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

static void BM_DelaunayGrid(benchmark::State& state) {
  const PointCloud cloud = sample_grid(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_2d(cloud));
}
BENCHMARK(BM_DelaunayGrid)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Persistence(benchmark::State& state) {
  const FilteredComplex complex = build_alpha(sample_circle(static_cast<std::uint64_t>(state.range(0)), 2));
  const auto algorithm = state.range(1) ? PersistenceAlgorithm::matrix_reduction : PersistenceAlgorithm::automatic;
  for (auto _ : state) benchmark::DoNotOptimize(compute_persistence(complex, algorithm));
  state.SetLabel(state.range(1) ? "reduction" : "union-find");
}
BENCHMARK(BM_Persistence)->ArgsProduct({{10000, 100000}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_CantorBarcode(benchmark::State& state) {
  const PointCloud cloud = sample_cantor(static_cast<std::uint64_t>(state.range(0)), 100, 7);
  for (auto _ : state) benchmark::DoNotOptimize(compute_persistence(build_alpha(cloud)));
}
BENCHMARK(BM_CantorBarcode)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_CurveEvaluation(benchmark::State& state) {
  const Barcode barcode = compute_persistence(build_alpha(sample_circle(static_cast<std::uint64_t>(state.range(0)), 3)));
  const auto grid = log_grid(1.0, 1000.0, 50);
  for (auto _ : state) benchmark::DoNotOptimize(magnitude_curve(barcode, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size() * barcode.size()));
}
BENCHMARK(BM_CurveEvaluation)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ClassicalMagnitude(benchmark::State& state) {
  const DistanceMatrix d = distance_matrix(sample_circle(static_cast<std::uint64_t>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(magnitude(d));
}
BENCHMARK(BM_ClassicalMagnitude)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

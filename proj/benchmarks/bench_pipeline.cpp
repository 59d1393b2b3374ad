#include <benchmark/benchmark.h>

#include <random>

#include "dfab/discretizer.hpp"
#include "dfab/feasibility.hpp"
#include "dfab/sequencer.hpp"
#include "dfab/shapes.hpp"
#include "dfab/toolpath.hpp"
#include "dfab_tools/fixtures.hpp"

namespace {

using namespace dfab;

// Sphere tessellation fineness drives triangle count; cell size drives grid size.
void BM_VoxelizeSphere(benchmark::State& state) {
  const int rings = static_cast<int>(state.range(0));
  const auto mesh = shapes::uv_sphere({30, 25, 30}, 24.0, 2 * rings, rings);
  const auto spec = build_grid(bounding_box(mesh), static_cast<double>(state.range(1)) / 10.0);
  VoxelizeOptions options;
  options.threads = static_cast<unsigned>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(voxelize(mesh, spec, options));
  state.counters["triangles"] = static_cast<double>(mesh.triangles.size());
}
BENCHMARK(BM_VoxelizeSphere)
    ->Args({16, 100, 1})
    ->Args({64, 100, 1})
    ->Args({64, 25, 1})
    ->Args({64, 25, 4})
    ->Unit(benchmark::kMicrosecond);

void BM_ConnectivitySort(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  OccupancyGrid grid(GridSpec{{0, 0, 0}, 10.0, {side, side, side}});
  std::mt19937 rng(7);
  // Dense random solid that still stands: keep every ground cell, thin the rest.
  for (int k = 0; k < side; ++k)
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) {
        if (k == 0 || (grid.contains({i, j, k - 1}) && rng() % 4 != 0)) grid.insert({i, j, k});
      }
  for (auto _ : state) benchmark::DoNotOptimize(connectivity_sort(grid));
  state.counters["cells"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_ConnectivitySort)->Arg(6)->Arg(12)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_RunFeasibility(benchmark::State& state) {
  const auto fixture = fixtures::all()[static_cast<std::size_t>(state.range(0))];
  const auto mesh = fixtures::mesh(fixture);
  for (auto _ : state) benchmark::DoNotOptimize(run_feasibility(mesh, AssemblyConfig{}));
  state.SetLabel(fixture.name);
}
BENCHMARK(BM_RunFeasibility)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_PlanToolpath(benchmark::State& state) {
  OccupancyGrid grid(GridSpec{{0, 0, 0}, 10.0, {6, 5, 6}});
  for (int n = 0; n < 40; ++n) grid.insert({n % 6, (n / 6) % 5, n / 30});
  const auto seq = naive_sort(grid);
  for (auto _ : state) {
    const auto path = plan_toolpath(seq, grid, AssemblyConfig{}, MotionParams{});
    benchmark::DoNotOptimize(estimate_duration(path));
  }
}
BENCHMARK(BM_PlanToolpath);

}  // namespace

BENCHMARK_MAIN();

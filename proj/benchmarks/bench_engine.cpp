#include <benchmark/benchmark.h>

#include <string>

#include "rifs/attractor.hpp"
#include "rifs/hausdorff.hpp"
#include "rifs/radial.hpp"
#include "rifs/scene.hpp"

namespace {

rifs::Scene scene(const char* name) { return rifs::load_scene(std::string(RIFS_SCENE_DIR) + "/" + name); }

void BM_GridAccumulate(benchmark::State& state, const char* name) {
  const rifs::Scene s = scene(name);
  rifs::GridOptions opts;
  opts.threads = 1;
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_accumulate(s.system, s.window, res, opts));
}
BENCHMARK_CAPTURE(BM_GridAccumulate, sierpinski, "sierpinski.json")->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GridAccumulate, cantor_target, "cantor_target.json")->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ChaosGame(benchmark::State& state) {
  const rifs::Scene s = scene("sierpinski.json");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chaos_game(s.system, n, 30, 1, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChaosGame)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_CloudHausdorff(benchmark::State& state) {
  const rifs::Scene s = scene("sierpinski.json");
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = chaos_game(s.system, n, 30, 1, 1);
  const auto b = chaos_game(s.system, n, 30, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_distance(a, b, 1));
}
BENCHMARK(BM_CloudHausdorff)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_GridHausdorff(benchmark::State& state) {
  const rifs::Scene s = scene("sierpinski.json");
  const auto acc = grid_accumulate(s.system, s.window, static_cast<int>(state.range(0)));
  const auto shifted = hutchinson_step(s.system, acc.grid);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_distance(acc.grid, shifted));
}
BENCHMARK(BM_GridHausdorff)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Oracle1D(benchmark::State& state) {
  const rifs::Ifs1D ifs({{1.0 / 3.0, 0.0}, {1.0 / 3.0, 2.0 / 3.0}});
  for (auto _ : state) benchmark::DoNotOptimize(oracle_attractor_1d(ifs, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Oracle1D)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

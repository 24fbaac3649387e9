// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "physadder/lattice.hpp"
#include "physadder/simulation.hpp"

using namespace physadder;

namespace {

TrailField seededField(const ArenaGeometry& g) {
  TrailField field(g.lattice_width, g.lattice_height);
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int y = g.habitable.y; y < g.habitable.y + g.habitable.height; ++y) {
    for (int x = g.habitable.x; x < g.habitable.x + g.habitable.width; ++x) field.at(x, y) = u(rng);
  }
  return field;
}

void BM_DiffuseParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const ArenaGeometry g;
  const HabitableMask mask = buildMask(g);
  TrailField field = seededField(g);
  TrailField scratch(g.lattice_width, g.lattice_height);
  for (auto _ : state) {
    diffuse(field, mask, 0.99, scratch);
    benchmark::DoNotOptimize(field.values().data());
  }
}
BENCHMARK(BM_DiffuseParallel)->Arg(1)->Arg(2)->Arg(4);

void BM_DiffuseReference(benchmark::State& state) {
  const ArenaGeometry g;
  const HabitableMask mask = buildMask(g);
  TrailField field = seededField(g);
  for (auto _ : state) {
    diffuseReference(field, mask, 0.99);
    benchmark::DoNotOptimize(field.values().data());
  }
}
BENCHMARK(BM_DiffuseReference);

RunConfig shortConfig() {
  RunConfig c;
  c.total_steps = 200;
  c.warmup_steps = 50;
  return c;
}

void BM_SweepParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const RunConfig c = shortConfig();
  for (auto _ : state) benchmark::DoNotOptimize(sweep({1.0, 0.5}, 2, c, 1));
}
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& state) {
  const RunConfig c = shortConfig();
  for (auto _ : state) benchmark::DoNotOptimize(sweepSerial({1.0, 0.5}, 2, c, 1));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

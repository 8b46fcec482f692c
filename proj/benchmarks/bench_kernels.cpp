#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "anisodnl/config.hpp"
#include "anisodnl/grid.hpp"
#include "anisodnl/mollifiers.hpp"
#include "anisodnl/solver.hpp"

using namespace anisodnl;

namespace {

ProblemSpec preset(const char* name) {
  ConfigDocument doc;
  doc.set("preset", name);
  return build_problem(doc);
}

ScalarField positive_field(const GridPtr& grid, double t = 0.0) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.5, 2.0);
  std::vector<double> v(grid->size());
  for (double& x : v) x = d(rng);
  return ScalarField(grid, v, t);
}

}  // namespace

static void BM_FaceDiffPower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto grid = make_grid({n, n}, {1.0, 1.0});
  const ScalarField u = positive_field(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(face_diff_power(u, 1.5, 0));
    benchmark::DoNotOptimize(face_diff_power(u, 1.5, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid->size()));
}
BENCHMARK(BM_FaceDiffPower)->Arg(33)->Arg(65)->Arg(129);

static void BM_ImplicitStep(benchmark::State& state) {
  const ProblemSpec spec = preset("anisotropic");
  const auto n = static_cast<std::size_t>(state.range(0));
  auto grid = make_grid({n, n}, spec.box);
  SolverConfig c;
  c.dt = spec.T / 32.0;
  c.k = 4;
  const ScalarField u0 = sample(grid, SpaceTimeFn([&](Point x, double) { return spec.u0(x) + 0.25; }), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(implicit_step(u0, c.dt, spec, c));
}
BENCHMARK(BM_ImplicitStep)->Arg(17)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

static void BM_ExpMollify(benchmark::State& state) {
  auto grid = make_grid({33, 33}, {1.0, 1.0});
  TimeSeries s(grid);
  const auto frames = state.range(0);
  for (int64_t n = 0; n <= frames; ++n) s.push_back(positive_field(grid, static_cast<double>(n) / frames));
  for (auto _ : state) benchmark::DoNotOptimize(exp_mollify(s, 0.1));
}
BENCHMARK(BM_ExpMollify)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_Steklov(benchmark::State& state) {
  auto grid = make_grid({33, 33}, {1.0, 1.0});
  TimeSeries s(grid);
  const auto frames = state.range(0);
  for (int64_t n = 0; n <= frames; ++n) s.push_back(positive_field(grid, static_cast<double>(n) / frames));
  for (auto _ : state) benchmark::DoNotOptimize(steklov(s, 0.1));
}
BENCHMARK(BM_Steklov)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "sphcond/optimizer.hpp"
#include "sphcond/sampling.hpp"
#include "sphcond/sh.hpp"
#include "sphcond/voronoi.hpp"

using namespace sphcond;

static void BM_BuildShm(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const PointSet cipic = gen_cipic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_shm(cipic, order));
  }
}
BENCHMARK(BM_BuildShm)->Arg(4)->Arg(9)->Arg(14);

static void BM_EigenSummary(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Eigen::MatrixXcd g = gram(build_shm(gen_cipic(), order));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigen_summary(g));
  }
}
BENCHMARK(BM_EigenSummary)->Arg(4)->Arg(9)->Arg(14);

static void BM_InnerSolveLocal(benchmark::State& state) {
  const ShMatrix y = build_shm(gen_fibonacci(100, true), 3);
  SolverConfig cfg;
  cfg.mode = SolverMode::LocalSearch;
  cfg.seed = 1;
  cfg.restarts = 1;
  cfg.max_iters = static_cast<long>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inner_solve(y, 32, 0.0, std::nullopt, cfg));
  }
}
BENCHMARK(BM_InnerSolveLocal)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_InnerSolveExact(benchmark::State& state) {
  std::mt19937_64 rng(3);
  PointSet ps;
  ps.convention = Convention::FromZAxis;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 12; ++i)
    ps.directions.push_back({std::acos(1.0 - 2.0 * u(rng)), wrap_azimuth(kTwoPi * u(rng))});
  const ShMatrix y = build_shm(ps, 1);
  SolverConfig cfg;
  cfg.mode = SolverMode::ExactBnb;
  cfg.epsilon = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inner_solve(y, 8, 0.0, std::nullopt, cfg));
  }
}
BENCHMARK(BM_InnerSolveExact)->Unit(benchmark::kMillisecond);

static void BM_SphericalVoronoi(benchmark::State& state) {
  const PointSet ps = gen_fibonacci(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherical_voronoi(ps));
  }
}
BENCHMARK(BM_SphericalVoronoi)->Arg(60)->Arg(200)->Arg(1000);

BENCHMARK_MAIN();

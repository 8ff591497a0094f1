// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hcad/kernels.hpp"
#include "hcad/nurbs.hpp"

using namespace hcad;

namespace {

// Points on a unit sphere, the typical shape of a sampled surface cloud.
std::vector<Vec3> sphere_cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Vec3> out;
  out.reserve(n);
  while (out.size() < n) {
    const Vec3 p{g(rng), g(rng), g(rng)};
    const double r = norm(p);
    if (r > 1e-9) out.push_back(p / r);
  }
  return out;
}

NurbsSurface torus_patch() {
  const double h = std::numbers::sqrt2 / 2.0;
  const double cx[9] = {1, 1, 0, -1, -1, -1, 0, 1, 1};
  const double cy[9] = {0, 1, 1, 1, 0, -1, -1, -1, 0};
  const double cw[9] = {1, h, 1, h, 1, h, 1, h, 1};
  NurbsSurface s;
  s.u_degree = s.v_degree = 2;
  s.u_knots = s.v_knots = KnotVector{{0, 1, 2, 3, 4}, {3, 2, 2, 2, 3}};
  s.poles = Grid<Vec3>(9, 9);
  s.weights = Grid<double>(9, 9);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const double radius = 3.0 + cx[j];
      s.poles(i, j) = {radius * cx[i], radius * cy[i], cy[j]};
      s.weights(i, j) = cw[i] * cw[j];
    }
  }
  return s;
}

std::vector<double> params(std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

void BM_NearestSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = sphere_cloud(n, 1);
  const auto t = sphere_cloud(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::nearest_squared_distances(q, t));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

void BM_NearestParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = sphere_cloud(n, 1);
  const auto t = sphere_cloud(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::nearest_squared_distances(q, t));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

void BM_GridSerial(benchmark::State& state) {
  const SurfaceEvaluator eval(torus_patch());
  const auto u = params(static_cast<std::size_t>(state.range(0)), 0.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::evaluate_grid(eval, u, u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(u.size() * u.size()));
}

void BM_GridParallel(benchmark::State& state) {
  const SurfaceEvaluator eval(torus_patch());
  const auto u = params(static_cast<std::size_t>(state.range(0)), 0.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::evaluate_grid(eval, u, u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(u.size() * u.size()));
}

}  // namespace

BENCHMARK(BM_NearestSerial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestParallel)->Arg(1024)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

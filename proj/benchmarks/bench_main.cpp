#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "flatfront/analysis.hpp"
#include "flatfront/contour.hpp"
#include "flatfront/legendrian.hpp"
#include "flatfront/mesh.hpp"
#include "flatfront/polynomial.hpp"

namespace {

using namespace flatfront;

void BM_LiftAlongSegment(benchmark::State& state) {
  const WeierstrassData d = voss_data({1.0, -1.0, SpherePoint::infinity()});
  const std::vector<Complex> path{Complex(0.0, 0.5), Complex(3.0, 0.5)};
  for (auto _ : state) benchmark::DoNotOptimize(lift_along(d, path, Mat2::Identity()));
}
BENCHMARK(BM_LiftAlongSegment);

void BM_FindRoots(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> roots(static_cast<std::size_t>(state.range(0)));
  for (auto& r : roots) r = Complex(n(gen), n(gen));
  const Polynomial p = Polynomial::from_roots(roots);
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p));
}
BENCHMARK(BM_FindRoots)->Arg(4)->Arg(16)->Arg(64);

void BM_SingularSet(benchmark::State& state) {
  const WeierstrassData d = revolution_data({1.0 / 3.0, 1.0});
  ChartGrid g;
  g.rect = {-2.0, 2.0, -2.0, 2.0};
  g.nu = g.nv = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(singular_set(d, g));
}
BENCHMARK(BM_SingularSet)->Arg(128)->Arg(512);

void BM_Curvature(benchmark::State& state) {
  const WeierstrassData d = voss_data({1.0, -1.0, SpherePoint::infinity()});
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_curvature(d, Complex(0.3, 1.2), 1e-3));
}
BENCHMARK(BM_Curvature);

void BM_MeshFront(benchmark::State& state) {
  const WeierstrassData d = voss_data({1.0, -1.0, SpherePoint::infinity()});
  const SampleGrid g = default_grid(d, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mesh_front(d, g, 0.0));
}
BENCHMARK(BM_MeshFront)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

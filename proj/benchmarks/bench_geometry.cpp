#include <benchmark/benchmark.h>

#include <random>

#include "tsfem/tsfem.hpp"

namespace {

const tsfem::LevelSetSurface& ellipsoid() {
  static const auto s = tsfem::LevelSetSurface::ellipsoid(0.75, 1.25, 1.0);
  return s;
}

void BM_ClosestPoint(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> u;
  std::uniform_real_distribution<double> r(0.9, 1.2);
  std::vector<tsfem::Vec3> pts(1024);
  for (auto& p : pts) p = r(gen) * tsfem::Vec3(u(gen), u(gen), u(gen)).normalized().cwiseProduct(ellipsoid().semiaxes());
  std::size_t i = 0;
  for (auto _ : state) {
    auto pr = tsfem::closest_point(ellipsoid(), pts[i++ % pts.size()]);
    benchmark::DoNotOptimize(pr);
  }
}
BENCHMARK(BM_ClosestPoint);

void BM_CurveMesh(benchmark::State& state) {
  const auto flat = tsfem::generate(ellipsoid(), 3);
  for (auto _ : state) {
    tsfem::CurvedMesh cm(flat, ellipsoid(), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(cm);
  }
}
BENCHMARK(BM_CurveMesh)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_EvalGeometry(benchmark::State& state) {
  const tsfem::CurvedMesh cm(tsfem::generate(ellipsoid(), 2), ellipsoid(), static_cast<int>(state.range(0)));
  std::size_t e = 0;
  for (auto _ : state) {
    auto g = tsfem::eval_geometry(cm, e++ % cm.num_elements(), tsfem::RefPoint(0.2, 0.3));
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_EvalGeometry)->DenseRange(1, 4);

void BM_Lift(benchmark::State& state) {
  const tsfem::CurvedMesh cm(tsfem::generate(ellipsoid(), 2), ellipsoid(), 2);
  const auto g = tsfem::eval_geometry(cm, 7, tsfem::RefPoint(0.2, 0.3));
  for (auto _ : state) {
    auto l = tsfem::lift(ellipsoid(), g);
    benchmark::DoNotOptimize(l);
  }
}
BENCHMARK(BM_Lift);

}  // namespace

BENCHMARK_MAIN();

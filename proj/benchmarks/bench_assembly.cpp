#include <benchmark/benchmark.h>

#include "tsfem/tsfem.hpp"

namespace {

void BM_Assemble(benchmark::State& state) {
  const auto s = tsfem::LevelSetSurface::ellipsoid(0.75, 1.25, 1.0);
  const int k = static_cast<int>(state.range(1));
  const tsfem::CurvedMesh cm(tsfem::generate(s, static_cast<int>(state.range(0))), s, k);
  const tsfem::ScalarLagrangeSpace sp(cm, k);
  const tsfem::TensorFESpace space(sp, 1);
  const tsfem::ManufacturedCase mc(s, 1);
  tsfem::PenaltyConfig cfg;
  cfg.kp = k;
  for (auto _ : state) {
    auto sys = tsfem::assemble(space, s, cfg, [&](const tsfem::Vec3& y) { return mc.rhs(y); });
    benchmark::DoNotOptimize(sys);
  }
  state.counters["dofs"] = static_cast<double>(space.total_dofs());
}
BENCHMARK(BM_Assemble)->Args({2, 1})->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_SolveCG(benchmark::State& state) {
  tsfem::RunConfig rc;
  const auto s = rc.make_surface();
  const tsfem::CurvedMesh cm(tsfem::generate(s, static_cast<int>(state.range(0))), s, 2);
  const tsfem::ScalarLagrangeSpace sp(cm, 2);
  const tsfem::TensorFESpace space(sp, 1);
  const tsfem::ManufacturedCase mc(s, 1);
  const auto sys = tsfem::assemble(space, s, rc.penalty(10.0), [&](const tsfem::Vec3& y) { return mc.rhs(y); });
  for (auto _ : state) {
    auto x = tsfem::solve(sys.matrix, sys.rhs);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_SolveCG)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ManufacturedRhs(benchmark::State& state) {
  const auto s = tsfem::LevelSetSurface::sphere();
  const tsfem::ManufacturedCase mc(s, 2);
  const tsfem::Vec3 x = tsfem::Vec3(0.3, -0.4, 0.5).normalized();
  for (auto _ : state) {
    auto f = mc.rhs(x);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_ManufacturedRhs);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "maxface/fixtures.hpp"
#include "maxface/mesh_export.hpp"
#include "maxface/sequences.hpp"

using namespace maxface;

namespace {

struct DeformedPair {
  MaxfaceSolution base;
  MaxfaceSolution deformed;
  WeierstrassData w;
  Domain domain;
};

const DeformedPair& pair() {
  static const DeformedPair p = [] {
    const auto fx = fixtures::catenoid_circle_deformation();
    const auto base = solve(fx.data, fx.domain, fx.t0);
    const auto dd = deform(fx.data, *fx.family, 4);
    return DeformedPair{base, solve_phi(*dd.psi, fx.domain, base.basepoint, true),
                        weierstrass_from_phi(*dd.psi), fx.domain};
  }();
  return p;
}

void BM_SupDifferenceSerial(benchmark::State& state) {
  const auto& p = pair();
  const auto pts = grid_points(p.domain, state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sup_difference_serial(p.base, p.deformed, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_SupDifferenceParallel(benchmark::State& state) {
  const auto& p = pair();
  const auto pts = grid_points(p.domain, state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sup_difference_parallel(p.base, p.deformed, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_SampleSurfaceSerial(benchmark::State& state) {
  const auto& p = pair();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mesh::sample_surface_serial(p.deformed, &p.w, p.domain, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_SampleSurfaceParallel(benchmark::State& state) {
  const auto& p = pair();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mesh::sample_surface(p.deformed, &p.w, p.domain, n, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}

}  // namespace

BENCHMARK(BM_SupDifferenceSerial)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SupDifferenceParallel)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleSurfaceSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSurfaceParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

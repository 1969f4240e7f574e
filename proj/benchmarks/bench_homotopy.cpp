#include "ccw/characterisations.hpp"
#include "ccw/generators.hpp"
#include "ccw/homotopy.hpp"

#include <benchmark/benchmark.h>

namespace {

ccw::AdbEngine interval_engine(int radius) {
  auto w = ccw::GroupWindow::build(ccw::make_free_abelian(1), radius);
  return ccw::AdbEngine(ccw::make_perturbed_interval_homotopy(w, 4, 3));
}

void BM_AdbPoint(benchmark::State& state) {
  auto engine = interval_engine(120);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = engine.adb_point(engine.ground().window()->identity(), 0, n);
    benchmark::DoNotOptimize(r.set.count());
  }
}
BENCHMARK(BM_AdbPoint)->Arg(4)->Arg(16);

void BM_LongCheck(benchmark::State& state) {
  auto engine = interval_engine(120);
  auto cover = ccw::make_brick_cover(engine.ground_ptr(), 48, 2);
  for (auto _ : state) {
    auto r = ccw::n_long_check(cover, engine, 5);
    benchmark::DoNotOptimize(r.pass);
  }
}
BENCHMARK(BM_LongCheck);

void BM_CoverToMap(benchmark::State& state) {
  auto engine = interval_engine(170);
  auto cover = ccw::make_brick_cover(engine.ground_ptr(), 96, 2);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto phi = ccw::cover_to_map(cover, engine, k);
    benchmark::DoNotOptimize(phi.measured_constant);
  }
}
BENCHMARK(BM_CoverToMap)->Arg(11)->Arg(23);

}  // namespace

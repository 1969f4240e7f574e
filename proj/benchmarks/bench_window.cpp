#include "ccw/window.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_BuildFreeWindow(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto w = ccw::GroupWindow::build(ccw::make_free(2), radius);
    benchmark::DoNotOptimize(w->size());
  }
}
BENCHMARK(BM_BuildFreeWindow)->Arg(4)->Arg(6)->Arg(8);

void BM_BuildZ2Window(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto w = ccw::GroupWindow::build(ccw::make_free_abelian(2), radius);
    benchmark::DoNotOptimize(w->size());
  }
}
BENCHMARK(BM_BuildZ2Window)->Arg(16)->Arg(64);

void BM_Ball(benchmark::State& state) {
  auto w = ccw::GroupWindow::build(ccw::make_free(2), 7);
  const ccw::Rational alpha(static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state) {
    auto b = w->ball(w->identity(), alpha);
    benchmark::DoNotOptimize(b.elements.size());
  }
}
BENCHMARK(BM_Ball)->Arg(2)->Arg(4);

}  // namespace

#include "ccw/cover.hpp"
#include "ccw/generators.hpp"

#include <benchmark/benchmark.h>

#include <memory>

namespace {

ccw::CoverFamily bricks(int radius, int length) {
  auto w = ccw::GroupWindow::build(ccw::make_free_abelian(1), radius);
  auto model = ccw::make_interval_compactification(ccw::GroupWindow::build(ccw::make_free_abelian(1), 4));
  auto ground = std::make_shared<ccw::GroundSet>(w, model.space.size(), ccw::ActionMode::Translation);
  return ccw::make_brick_cover(ground, length, 2);
}

void BM_Pad(benchmark::State& state) {
  auto cover = bricks(200, 24);
  const ccw::Rational alpha(static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state) {
    auto s = ccw::pad(*cover.ground, cover.members[3], alpha);
    benchmark::DoNotOptimize(s.count());
  }
}
BENCHMARK(BM_Pad)->Arg(2)->Arg(8);

void BM_LebesgueCheck(benchmark::State& state) {
  auto cover = bricks(200, 24);
  for (auto _ : state) {
    auto r = ccw::lebesgue_check(cover, ccw::Rational(4));
    benchmark::DoNotOptimize(r.pass);
  }
}
BENCHMARK(BM_LebesgueCheck);

void BM_Multiplicity(benchmark::State& state) {
  auto cover = bricks(200, 24);
  for (auto _ : state) {
    auto r = ccw::g_multiplicity(cover, ccw::Rational(3));
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Multiplicity);

}  // namespace

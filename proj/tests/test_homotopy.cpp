#include "ccw/error.hpp"
#include "ccw/generators.hpp"
#include "ccw/homotopy.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace ccw;
using namespace ccw::testing;

namespace {

/// ADB^n by repeated expansion of the whole set, straight from the step rule.
Subset adb_oracle(const HomotopyAction& ha, const GroundSet& ground, const Subset& seed, int n) {
  const auto& w = *ha.window;
  std::map<Index, std::set<PointMap>> F;
  for (const auto& [pair, maps] : ha.H) {
    auto g = w.multiply(pair.first, pair.second);
    for (const auto& f : maps) F[*g].insert(f);
  }
  Subset current = seed;
  for (int r = 0; r < n; ++r) {
    Subset next = current;
    for (auto p = current.find_first(); p != Subset::npos; p = current.find_next(p)) {
      const Index g = ground.group_part(p);
      const Point x = ground.point_part(p);
      for (auto s : ha.S) {
        auto gs = w.multiply(g, s);
        if (!gs) continue;
        for (const auto& f : F[w.inverse(s)]) next.set(ground.index(*gs, f[static_cast<std::size_t>(x)]));
        for (const auto& f : F[s]) {
          for (std::size_t y = 0; y < ha.n_points; ++y) {
            if (f[y] == x) next.set(ground.index(*gs, static_cast<Point>(y)));
          }
        }
      }
    }
    current = next;
  }
  return current;
}

}  // namespace

TEST_CASE("perturbed interval homotopies validate for many seeds") {
  auto w = z_window(6);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto ha = make_perturbed_interval_homotopy(w, 5, seed);
    auto v = validate_homotopy_action(ha);
    CHECK_MESSAGE(v.ok, v.violation);
  }
}

TEST_CASE("validation reports broken endpoint laws") {
  auto w = z_window(4);
  auto ha = make_perturbed_interval_homotopy(w, 3, 7);
  const Index plus = *w->find(Word{1});
  const Index minus = *w->find(Word{-1});
  auto broken = ha;
  auto& maps = broken.H.at({plus, minus});
  maps.back()[2] = maps.back()[2] == 0 ? 1 : 0;
  CHECK_FALSE(validate_homotopy_action(broken).ok);
  auto no_identity = ha;
  no_identity.S.erase(std::find(no_identity.S.begin(), no_identity.S.end(), w->identity()));
  CHECK_FALSE(validate_homotopy_action(no_identity).ok);
  auto bad_grid = ha;
  bad_grid.time_grid = {Rational(0), Rational(1, 2)};
  CHECK_FALSE(validate_homotopy_action(bad_grid).ok);
  CHECK_THROWS_AS(AdbEngine{broken}, Error);
}

TEST_CASE("genuine actions need to be total on S") {
  auto w = z_window(4);
  auto interval = make_interval_compactification(w);
  try {
    genuine_to_homotopy(interval.action, standard_generating_set(*w));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientDomain);
  }
  auto cyclic = make_cyclic_model(w, 5);
  auto ha = genuine_to_homotopy(cyclic.action, standard_generating_set(*w));
  CHECK(validate_homotopy_action(ha).ok);
  CHECK(ha.step_length() == 1);
  CHECK(f_maps(ha).at(w->identity()).size() == 1);
}

TEST_CASE("ADB engine matches the repeated-expansion oracle") {
  std::mt19937_64 rng(0x5eed0005);
  auto w = z_window(8);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto ha = make_perturbed_interval_homotopy(w, 4, seed);
    AdbEngine engine(ha);
    const auto& ground = engine.ground();
    for (int trial = 0; trial < 10; ++trial) {
      Subset s = ground.empty();
      s.set(rng() % ground.size());
      s.set(rng() % ground.size());
      for (int n = 0; n <= 3; ++n) CHECK(engine.adb(s, n).set == adb_oracle(ha, ground, s, n));
    }
  }
  auto fw = f_window(2, 4);
  auto cyc = make_cyclic_model(fw, 4);
  auto ha = genuine_to_homotopy(cyc.action, standard_generating_set(*fw));
  AdbEngine engine(ha);
  for (int trial = 0; trial < 20; ++trial) {
    Subset s = engine.ground().empty();
    s.set(rng() % engine.ground().size());
    for (int n = 0; n <= 2; ++n) CHECK(engine.adb(s, n).set == adb_oracle(ha, engine.ground(), s, n));
  }
}

TEST_CASE("bridge: ADB of a genuine action is the translated ball") {
  for (auto w : {z_window(9), zn_window(2, 5), f_window(2, 4)}) {
    auto model = make_cyclic_model(w, 6);
    for (int alpha = 1; alpha <= w->radius(); ++alpha) {
      auto report = adb_bridge_check(model.action, alpha);
      CHECK(report.checked > 0);
      CHECK(report.mismatches == 0);
    }
  }
}

TEST_CASE("longness of whole and singleton covers") {
  auto w = z_window(10);
  auto ha = make_perturbed_interval_homotopy(w, 4, 3);
  AdbEngine engine(ha);
  auto whole = make_whole_cover(engine.ground_ptr());
  auto r = n_long_check(whole, engine, 3);
  CHECK(r.pass);
  CHECK_FALSE(r.inconclusive);
  CHECK(r.seeds == static_cast<std::size_t>(w->inner_window(Rational(4)).size() * ha.n_points));
  std::vector<Point> all(ha.n_points);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Point>(i);
  auto singletons = make_singleton_cover(engine.ground_ptr(), all);
  auto bad = n_long_check(singletons, engine, 1);
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness.has_value());
  CHECK_THROWS_AS(n_long_check(whole, engine, 11), Error);
}

TEST_CASE("modulus probe for n = 0 is the first realized distance at least eps") {
  auto w = z_window(3);
  auto model = make_interval_compactification(w);
  auto ha = make_perturbed_interval_homotopy(w, 3, 11);
  AdbEngine engine(ha);
  const auto& ground = engine.ground();
  Subset a = ground.empty();
  a.set(ground.index(0, *model.space.find("0")));
  for (auto eps : {Rational(1, 10), Rational(1, 3), Rational(1, 2), Rational(1)}) {
    auto probe = adb_modulus_probe(engine, model.space, a, 0, eps);
    CHECK(probe.delta > 0);
    // Oracle: smallest product distance d(p, A) with d >= eps.
    std::optional<Rational> expected;
    for (std::size_t p = 0; p < ground.size(); ++p) {
      Rational d = std::max(Rational(w->distance(ground.group_part(p), 0)),
                            model.space.distance(ground.point_part(p), *model.space.find("0")));
      if (d >= eps && (!expected || d < *expected)) expected = d;
    }
    REQUIRE(expected);
    CHECK(probe.delta == *expected);
  }
}

TEST_CASE("modulus probe stays positive for longer expansions") {
  auto w = z_window(6);
  auto model = make_interval_compactification(z_window(4));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto ha = make_perturbed_interval_homotopy(w, 4, seed);
    AdbEngine engine(ha);
    Subset a = engine.ground().empty();
    a.set(engine.ground().index(0, 5));
    for (int n = 1; n <= 2; ++n) {
      auto probe = adb_modulus_probe(engine, model.space, a, n, Rational(1, 4));
      CHECK(probe.delta > 0);
    }
  }
}

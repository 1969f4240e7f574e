#include "ccw/cover.hpp"
#include "ccw/error.hpp"
#include "ccw/generators.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ccw;
using namespace ccw::testing;

namespace {

Subset pad_oracle(const GroundSet& ground, const Subset& u, const Rational& alpha) {
  const auto& w = *ground.window();
  Subset out = ground.empty();
  for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
    for (std::size_t x = 0; x < ground.n_points(); ++x) {
      for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
        if (Rational(w.distance(g, h)) < alpha && u.test(ground.index(g, static_cast<Point>(x)))) {
          out.set(ground.index(h, static_cast<Point>(x)));
        }
      }
    }
  }
  return out;
}

Subset shrink_oracle(const GroundSet& ground, const Subset& u, const Rational& alpha) {
  const auto& w = *ground.window();
  Subset out = ground.empty();
  for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
    for (std::size_t x = 0; x < ground.n_points(); ++x) {
      bool inside = true;
      for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
        if (Rational(w.distance(g, h)) < alpha && !u.test(ground.index(g, static_cast<Point>(x)))) inside = false;
      }
      if (inside) out.set(ground.index(h, static_cast<Point>(x)));
    }
  }
  return out;
}

bool lebesgue_oracle(const CoverFamily& cover, const Rational& alpha) {
  const auto& ground = *cover.ground;
  const auto& w = *ground.window();
  for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
    if (Rational(w.length(g)) + alpha > Rational(w.radius() + 1)) continue;
    for (std::size_t x = 0; x < ground.n_points(); ++x) {
      bool found = false;
      for (const auto& u : cover.members) {
        bool all = true;
        for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
          if (Rational(w.distance(g, h)) < alpha && !u.test(ground.index(h, static_cast<Point>(x)))) all = false;
        }
        found = found || all;
      }
      if (!found) return false;
    }
  }
  return true;
}

GroundPtr translation_ground(const WindowPtr& w, std::size_t n) {
  return std::make_shared<GroundSet>(w, n, ActionMode::Translation);
}

}  // namespace

TEST_CASE("pad and shrink equal the set-comprehension oracle on every subset of a tiny ground") {
  auto ground = translation_ground(z_window(2), 2);  // 10 elements
  REQUIRE(ground->size() == 10);
  for (std::uint32_t mask = 0; mask < (1u << ground->size()); ++mask) {
    Subset u(ground->size(), mask);
    for (int a = 1; a <= 3; ++a) {
      const Rational alpha(a);
      REQUIRE(pad(*ground, u, alpha) == pad_oracle(*ground, u, alpha));
      REQUIRE(shrink(*ground, u, alpha) == shrink_oracle(*ground, u, alpha));
    }
  }
}

TEST_CASE("pad and shrink are dual and shrink-then-pad stays inside") {
  auto ground = translation_ground(f_window(2, 3), 3);
  std::mt19937_64 rng(0x5eed0003);
  for (int trial = 0; trial < 60; ++trial) {
    Subset u = random_subset(*ground, rng, 0.6);
    for (int a = 1; a <= 2; ++a) {
      const Rational alpha(a);
      CHECK(shrink(*ground, u, alpha) == ~pad(*ground, ~u, alpha));
      CHECK(pad(*ground, shrink(*ground, u, alpha), alpha).is_subset_of(u));
      CHECK(u.is_subset_of(pad(*ground, u, alpha)));
      CHECK(pad_shrink(*ground, u, -alpha) == shrink(*ground, u, alpha));
      CHECK(pad_shrink(*ground, u, Rational(0)) == u);
    }
  }
}

TEST_CASE("Lebesgue check against the brute-force oracle") {
  std::mt19937_64 rng(0x5eed0004);
  auto ground = translation_ground(zn_window(2, 3), 2);
  for (int trial = 0; trial < 80; ++trial) {
    CoverFamily cover;
    cover.ground = ground;
    const int members = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < members; ++i) cover.members.push_back(random_subset(*ground, rng, 0.85));
    for (int a = 1; a <= 3; ++a) {
      auto got = lebesgue_check(cover, Rational(a));
      CHECK(got.pass == lebesgue_oracle(cover, Rational(a)));
      if (!got.pass) CHECK(got.witness.has_value());
    }
  }
  CoverFamily whole = make_whole_cover(ground);
  CHECK(lebesgue_check(whole, Rational(4)).alpha_is_infinite);
  CHECK_THROWS_AS(lebesgue_check(whole, Rational(5)), Error);
}

TEST_CASE("dimension and multiplicity") {
  auto ground = translation_ground(z_window(10), 1);
  auto bricks = make_brick_cover(ground, 4, 2);
  CHECK(family_dimension(bricks) == 1);
  CHECK(bricks.covers_ground());
  auto single = make_brick_cover(ground, 4, 1);
  CHECK(family_dimension(single) == 0);
  // Every ball of radius 2 (3 integers) meets at most 2 bricks of one layer.
  CHECK(g_multiplicity(single, Rational(2)).value == 2);
  CHECK(g_multiplicity(single, Rational(1)).value == 1);
  CoverFamily empty;
  empty.ground = ground;
  CHECK(family_dimension(empty) == -1);
}

TEST_CASE("brick covers reach their layered Lebesgue number") {
  auto ground = translation_ground(z_window(60), 1);
  // One layer never has Lebesgue number above 1 at a brick seam; two layers of length 8 reach 2.
  CHECK_FALSE(lebesgue_check(make_brick_cover(ground, 8, 1), Rational(2)).pass);
  CHECK(lebesgue_check(make_brick_cover(ground, 8, 2), Rational(2)).pass);
  CHECK(lebesgue_check(make_brick_cover(ground, 16, 2), Rational(4)).pass);
  CHECK(lebesgue_check(make_brick_cover(ground, 12, 3), Rational(4)).pass);
}

TEST_CASE("translate comparisons and F-subset verdicts") {
  auto w = z_window(6);
  auto ground = translation_ground(w, 2);
  const FamilyPredicate vcyc{FamilyKind::VirtuallyCyclic};
  const FamilyPredicate trivial{FamilyKind::Trivial};
  const Point pts[] = {0};

  auto whole = ground->fiber_product(pts);
  auto v = f_subset_check(*ground, whole, vcyc);
  CHECK(v.status == FSubsetVerdict::Status::Ok);
  CHECK(v.stabilizer.size() == w->size());
  CHECK(v.complete());
  CHECK(f_subset_check(*ground, whole, trivial).status == FSubsetVerdict::Status::StabilizerViolation);

  std::vector<Index> evens;
  for (Index g = 0; g < static_cast<Index>(w->size()); ++g) {
    if (w->word(g)[0] % 2 == 0) evens.push_back(g);
  }
  auto even_set = ground->product(evens, pts);
  auto ve = f_subset_check(*ground, even_set, vcyc);
  CHECK(ve.status == FSubsetVerdict::Status::Ok);
  CHECK(ve.stabilizer == evens);

  std::vector<Index> pair{0, *w->find(Word{1})};
  auto overlap = f_subset_check(*ground, ground->product(pair, pts), vcyc);
  CHECK(overlap.status == FSubsetVerdict::Status::OrbitOverlap);
  REQUIRE(overlap.witness);
  CHECK(std::abs(w->word(*overlap.witness)[0]) == 1);

  auto z2 = translation_ground(zn_window(2, 3), 1);
  auto plane = f_subset_check(*z2, z2->full(), vcyc);
  CHECK(plane.status == FSubsetVerdict::Status::StabilizerViolation);

  const Index three = *w->find(Word{3});
  auto rel = compare_translate(*ground, ground->product(std::vector<Index>{0}, pts), three,
                               ground->product(std::vector<Index>{three}, pts));
  CHECK(rel.relation == TranslateRelation::Equal);
}

TEST_CASE("diagonal translation moves points") {
  auto model = make_interval_compactification(z_window(4));
  auto ground = ground_for(model, ActionMode::Diagonal);
  const auto& w = *ground->window();
  const Index one = *w.find(Word{1});
  const Point x = *model.space.find("0");
  auto moved = ground->act(one, ground->index(0, x));
  REQUIRE(moved);
  CHECK(*moved == ground->index(one, *model.space.find("1")));
  CHECK_FALSE(ground->act(one, ground->index(0, *model.space.find("4"))).has_value());
}

TEST_CASE("member action, orbits and subfamilies") {
  auto ground = translation_ground(z_window(8), 1);
  auto bricks = make_brick_cover(ground, 4, 1);
  auto orbits = compute_orbits(bricks);
  // Translates by multiples of 4 are defined between full bricks only.
  CHECK(orbits.size() < bricks.size());
  auto action = member_action(bricks);
  const auto& w = *ground->window();
  for (std::size_t i = 0; i < bricks.size(); ++i) CHECK(action[i * w.size()] == static_cast<std::int32_t>(i));
  std::vector<std::size_t> idx{0, 2};
  auto sub = subfamily(bricks, idx);
  CHECK(sub.members.size() == 2);
  CHECK(sub.members[1] == bricks.members[2]);
}

TEST_CASE("r-disjointness") {
  auto ground = translation_ground(z_window(10), 1);
  const Point pts[] = {0};
  CoverFamily cover;
  cover.ground = ground;
  std::vector<Index> left, right;
  for (Index g = 0; g < static_cast<Index>(ground->window()->size()); ++g) {
    int z = ground->window()->word(g)[0];
    if (z <= -3) left.push_back(g);
    if (z >= 3) right.push_back(g);
  }
  cover.members = {ground->product(left, pts), ground->product(right, pts)};
  CHECK(r_disjointness_check(cover, Rational(6)).pass);
  auto r = r_disjointness_check(cover, Rational(7));
  CHECK_FALSE(r.pass);
  CHECK(r.witness.has_value());
}

TEST_CASE("boundary split ledger") {
  auto model = make_interval_compactification(z_window(4));
  auto ground = ground_for(model, ActionMode::Translation);
  CoverFamily cover;
  cover.ground = ground;
  cover.members.push_back(ground->fiber_product(model.boundary_points()));
  cover.members.push_back(ground->fiber_product(model.interior_points()));
  auto split = split_boundary_parts(cover, model.boundary);
  CHECK(split.boundary_part == std::vector<std::size_t>{0});
  CHECK(split.interior_part == std::vector<std::size_t>{1});
  CHECK(split.dim_total == 0);
  CHECK(split.bound == 1);
}

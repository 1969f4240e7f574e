#include "ccw/error.hpp"
#include "ccw/refine.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace ccw;
using namespace ccw::testing;

namespace {

struct Instance {
  WindowPtr h;
  FiniteMetricSpace y;
  PartialAction action;
};

/// |H| copies of `base` points permuted by the regular action of Z/order, with
/// the invariant metric max_h d0(hy, hy') for a random planar L1 metric d0.
Instance random_instance(std::mt19937_64& rng, int order, int base) {
  auto h = GroupWindow::build(FiniteGroup::cyclic(order), order);
  const auto n = static_cast<std::size_t>(order * base);
  std::vector<std::pair<int, int>> coords;
  std::set<std::pair<int, int>> used;
  while (coords.size() < n) {
    std::pair<int, int> c{static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)};
    if (used.insert(c).second) coords.push_back(c);
  }
  // Point b * order + i is the i-th translate of base point b.
  std::vector<Point> table(h->size() * n);
  for (Index g = 0; g < static_cast<Index>(h->size()); ++g) {
    const int shift = h->word(g)[0];
    for (std::size_t p = 0; p < n; ++p) {
      const int b = static_cast<int>(p) / order;
      const int i = static_cast<int>(p) % order;
      table[static_cast<std::size_t>(g) * n + p] = static_cast<Point>(b * order + (i + shift) % order);
    }
  }
  PartialAction action(h, n, table);
  auto d0 = [&](std::size_t a, std::size_t b) {
    return std::abs(coords[a].first - coords[b].first) + std::abs(coords[a].second - coords[b].second);
  };
  std::vector<Rational> dist(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("y" + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) {
      int best = 0;
      for (Index g = 0; g < static_cast<Index>(h->size()); ++g) {
        best = std::max(best, d0(static_cast<std::size_t>(action.act(g, static_cast<Point>(a))),
                                 static_cast<std::size_t>(action.act(g, static_cast<Point>(b)))));
      }
      dist[a * n + b] = Rational(best);
    }
  }
  return {h, FiniteMetricSpace(labels, dist), action};
}

}  // namespace

TEST_CASE("quotient by the trivial group is the space itself") {
  std::mt19937_64 rng(0x5eed0006);
  auto inst = random_instance(rng, 1, 5);
  auto q = quotient_space(inst.y, inst.action);
  REQUIRE(q.space.size() == inst.y.size());
  for (Point a = 0; a < 5; ++a) {
    for (Point b = 0; b < 5; ++b) CHECK(q.space.distance(a, b) == inst.y.distance(a, b));
  }
}

TEST_CASE("negation on four points of the line") {
  auto c2 = GroupWindow::build(FiniteGroup::cyclic(2), 1);
  // Points -2, -1, 1, 2.
  const int coord[] = {-2, -1, 1, 2};
  std::vector<Rational> dist(16);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) dist[static_cast<std::size_t>(a * 4 + b)] = Rational(std::abs(coord[a] - coord[b]));
  }
  FiniteMetricSpace y({"-2", "-1", "1", "2"}, dist);
  PartialAction neg(c2, 4, {0, 1, 2, 3, 3, 2, 1, 0});
  auto q = quotient_space(y, neg);
  REQUIRE(q.classes.size() == 2);
  CHECK(q.space.distance(static_cast<Point>(q.class_of[2]), static_cast<Point>(q.class_of[3])) == 1);
}

TEST_CASE("free rotation of order 3 on six points") {
  auto c3 = GroupWindow::build(FiniteGroup::cyclic(3), 2);
  std::vector<Rational> dist(36);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      int k = std::abs(a - b);
      dist[static_cast<std::size_t>(a * 6 + b)] = Rational(std::min(k, 6 - k));
    }
  }
  FiniteMetricSpace y({"0", "1", "2", "3", "4", "5"}, dist);
  std::vector<Point> table(3 * 6);
  for (Index g = 0; g < 3; ++g) {
    for (int p = 0; p < 6; ++p) table[static_cast<std::size_t>(g * 6 + p)] = static_cast<Point>((p + 2 * c3->word(g)[0]) % 6);
  }
  auto q = quotient_space(y, PartialAction(c3, 6, table));
  CHECK(q.classes.size() == 2);
  CHECK(q.space.distance(0, 1) == 1);
}

TEST_CASE("non-isometric actions are rejected") {
  auto c2 = GroupWindow::build(FiniteGroup::cyclic(2), 1);
  FiniteMetricSpace y({"a", "b", "c"}, {0, 1, 2, 1, 0, 1, 2, 1, 0});
  PartialAction swap_ab(c2, 3, {0, 1, 2, 1, 0, 2});
  CHECK_THROWS_AS(quotient_space(y, swap_ab), Error);
}

TEST_CASE("quotient metric equals the two-sided infimum oracle") {
  std::mt19937_64 rng(0x5eed0007);
  for (int trial = 0; trial < 30; ++trial) {
    const int order = 1 + static_cast<int>(rng() % 6);
    const int base = 1 + static_cast<int>(rng() % (24 / order));
    auto inst = random_instance(rng, order, base);
    auto q = quotient_space(inst.y, inst.action);
    CHECK(q.classes.size() * static_cast<std::size_t>(order) == inst.y.size());
    for (std::size_t a = 0; a < q.classes.size(); ++a) {
      for (std::size_t b = 0; b < q.classes.size(); ++b) {
        CHECK(q.space.distance(static_cast<Point>(a), static_cast<Point>(b)) ==
              class_distance_oracle(inst.y, q.classes[a], q.classes[b]));
      }
    }
    for (Point ya = 0; ya < static_cast<Point>(inst.y.size()); ++ya) {
      for (Point yb = 0; yb < static_cast<Point>(inst.y.size()); ++yb) {
        CHECK(q.space.distance(static_cast<Point>(q.class_of[static_cast<std::size_t>(ya)]),
                               static_cast<Point>(q.class_of[static_cast<std::size_t>(yb)])) <= inst.y.distance(ya, yb));
      }
    }
  }
}

TEST_CASE("minimal refinements") {
  auto same = min_dim_refinement(4, {{0, 1}, {2, 3}});
  CHECK(same.members == std::vector<std::vector<Point>>{{0, 1}, {2, 3}});
  CHECK(same.unchanged == 2);
  CHECK(same.dimension == 0);
  auto twice = min_dim_refinement(3, {{0, 1, 2}, {0, 1, 2}});
  CHECK(twice.members == std::vector<std::vector<Point>>{{0, 1, 2}});
  CHECK(twice.dimension == 0);
  CHECK(twice.unchanged == 1);
  CHECK_THROWS_AS(min_dim_refinement(3, {{0, 1}}), Error);
  auto big = min_dim_refinement(20, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 11, 12, 13, 14, 15, 16, 17, 18, 19}, {5, 15}});
  CHECK_FALSE(big.optimal);
  CHECK(big.unchanged == 2);
}

TEST_CASE("exact refinement matches the exhaustive oracle") {
  std::mt19937_64 rng(0x5eed0008);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 8;
    std::vector<std::vector<Point>> cover(5);
    for (std::size_t x = 0; x < n; ++x) {
      bool placed = false;
      for (auto& m : cover) {
        if (rng() % 3 == 0) {
          m.push_back(static_cast<Point>(x));
          placed = true;
        }
      }
      if (!placed) cover[rng() % 5].push_back(static_cast<Point>(x));
    }
    auto got = min_dim_refinement(n, cover);
    CHECK(got.optimal);
    CHECK(got.assignment == refinement_oracle(n, cover));
    for (std::size_t i = 0; i < got.members.size(); ++i) {
      const auto& parent = cover[got.parent[i]];
      CHECK(std::includes(parent.begin(), parent.end(), got.members[i].begin(), got.members[i].end()));
    }
  }
}

TEST_CASE("equivariant lift for Z/2 on four points") {
  auto c2 = GroupWindow::build(FiniteGroup::cyclic(2), 1);
  FiniteMetricSpace y({"a", "a'", "b", "b'"}, {0, 1, 2, 2, 1, 0, 2, 2, 2, 2, 0, 1, 2, 2, 1, 0});
  auto action = std::make_shared<PartialAction>(c2, 4, std::vector<Point>{0, 1, 2, 3, 1, 0, 3, 2});
  auto ground = std::make_shared<GroundSet>(c2, 4, ActionMode::PointsOnly, action);
  CoverFamily u;
  u.ground = ground;
  u.members = {Subset(4, 0b0101), Subset(4, 0b1010)};
  auto q = quotient_space(y, *action);
  REQUIRE(q.classes.size() == 2);
  auto lift = equivariant_lift({{0, 1}}, u, q);
  CHECK(lift.covers);
  CHECK(lift.refines);
  CHECK(lift.parts_disjoint);
  CHECK(lift.stabilizers_match);
  CHECK(lift.dim_lift <= lift.dim_refinement);
  CHECK(lift.choice == std::vector<std::size_t>{0});
  for (const auto& m : lift.cover.members) {
    CHECK(f_subset_check(*ground, m, FamilyPredicate{FamilyKind::Trivial}).status == FSubsetVerdict::Status::Ok);
  }
  CoverFamily narrow;
  narrow.ground = ground;
  narrow.members = {Subset(4, 0b0011)};
  CHECK_THROWS_AS(equivariant_lift({{0, 1}}, narrow, q), Error);
}

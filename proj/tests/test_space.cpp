#include "ccw/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ccw;
using namespace ccw::testing;

TEST_CASE("metric axioms are enforced") {
  CHECK_NOTHROW(FiniteMetricSpace({"a", "b"}, {0, 1, 1, 0}));
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {0, 1, 2, 0}), Error);                          // asymmetric
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {0, 0, 0, 0}), Error);                          // not definite
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0}), Error);      // triangle
  FiniteMetricSpace s({"a", "b", "c"}, {0, 1, 2, 1, 0, 1, 2, 1, 0});
  CHECK(s.diameter() == 2);
  CHECK(s.min_positive_distance() == 1);
  CHECK(s.distinct_distances() == std::vector<Rational>{1, 2});
  CHECK(s.find("c") == std::optional<Point>(2));
}

TEST_CASE("interval model distances follow x/(|x|+1)") {
  const int R = 8;
  auto model = make_interval_compactification(z_window(R));
  REQUIRE(model.space.size() == static_cast<std::size_t>(2 * R + 3));
  CHECK(model.validate().ok);
  CHECK(model.boundary_points() == std::vector<Point>{0, 2 * R + 2});
  auto t = [&](Point p) {
    if (p == 0) return Rational(-1);
    if (p == 2 * R + 2) return Rational(1);
    int x = p - R - 1;
    return Rational(x, std::abs(x) + 1);
  };
  for (Point a = 0; a < static_cast<Point>(model.space.size()); ++a) {
    for (Point b = 0; b < static_cast<Point>(model.space.size()); ++b) CHECK(model.space.distance(a, b) == abs(t(a) - t(b)));
  }
  CHECK(model.space.distance(*model.space.find("-1"), *model.space.find("1")) == 1);
  // Translation by +1 moves R off the interval and fixes both ends.
  auto plus = *model.action.window()->find(Word{1});
  CHECK(model.action.act(plus, *model.space.find("3")) == *model.space.find("4"));
  CHECK(model.action.act(plus, *model.space.find(std::to_string(R))) == kUndefined);
  CHECK(model.action.act(plus, 0) == 0);
  CHECK_FALSE(model.action.is_total());
}

TEST_CASE("tree model has 4*3^(D-1) boundary points for F2") {
  for (int depth = 1; depth <= 5; ++depth) {
    auto model = make_tree_boundary_model(f_window(2, 3), depth);
    CHECK(model.boundary_points().size() == static_cast<std::size_t>(4 * std::pow(3, depth - 1)));
    CHECK(model.space.size() == static_cast<std::size_t>(2 * std::pow(3, depth) - 1));
    CHECK(model.validate().ok);
  }
}

TEST_CASE("tree model metric and action") {
  auto model = make_tree_boundary_model(f_window(2, 3), 3);
  const auto& s = model.space;
  auto p = [&](const char* label) { return *s.find(label); };
  CHECK(s.distance(p("aba"), p("abb")) == Rational(1, 4));
  CHECK(s.distance(p("aba"), p("Bab")) == 1);
  CHECK(s.distance(p("ab"), p("aba")) == Rational(1, 4));
  const auto& w = *model.action.window();
  const Index a = w.parse("a");
  CHECK(model.action.act(a, p("Ab")) == p("b"));        // interior: a.(a^-1 b) = b
  CHECK(model.action.act(a, p("bab")) == p("aba"));     // boundary: truncate abab
  CHECK(model.action.act(a, p("Aba")) == kUndefined);   // reduced product ba is too short
  CHECK(model.action.act(a, p("aaa")) == p("aaa"));
  CHECK(model.action.act(w.parse("AA"), p("aab")) == kUndefined);
}

TEST_CASE("permutation and cyclic actions are total and isometric") {
  for (auto w : {z_window(4), zn_window(2, 3), f_window(2, 3)}) {
    auto model = make_cyclic_model(w, 5);
    CHECK(model.action.is_total());
    CHECK(model.action.validate().ok);
    CHECK(model.action.is_isometric(model.space));
    CHECK(model.boundary_points().empty());
  }
  auto w = f_window(2, 2);
  CHECK_THROWS_AS(make_permutation_action(w, 3, {{0, 1, 2}}), Error);
  CHECK_THROWS_AS(make_permutation_action(w, 3, {{0, 0, 1}, {1, 2, 0}, {2, 0, 1}, {0, 1, 2}}), Error);
}

TEST_CASE("action validation catches a broken composition law") {
  auto w = z_window(2);
  auto model = make_cyclic_model(w, 4);
  auto table = model.action.table();
  const Index two = *w->find(Word{2});
  table[static_cast<std::size_t>(two) * 4] = 3;
  table[static_cast<std::size_t>(two) * 4 + 3] = 0;
  PartialAction broken(w, 4, table);
  CHECK_FALSE(broken.validate().ok);
}

#include "ccw/generators.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace ccw {

namespace {

std::vector<Point> all_points(const GroundSet& ground) {
  std::vector<Point> pts(ground.n_points());
  std::iota(pts.begin(), pts.end(), Point{0});
  return pts;
}

}  // namespace

CoverFamily make_whole_cover(const GroundPtr& ground) {
  CoverFamily cover;
  cover.ground = ground;
  cover.members.push_back(ground->full());
  return cover;
}

CoverFamily make_singleton_cover(const GroundPtr& ground, const std::vector<Point>& points) {
  CoverFamily cover;
  cover.ground = ground;
  for (auto y : points) {
    const Point one[] = {y};
    cover.members.push_back(ground->fiber_product(one));
  }
  return cover;
}

CoverFamily make_brick_cover(const GroundPtr& ground, int length, int layers) {
  const auto& w = *ground->window();
  if (w.group().kind() != GroupKind::FreeAbelian || w.group().identity().size() != 1) {
    fail(ErrorKind::InvalidArgument, "brick covers need a Z window");
  }
  if (length < 1 || layers < 1) fail(ErrorKind::InvalidArgument, "brick length and layers must be positive");
  if (ground->mode() == ActionMode::PointsOnly) fail(ErrorKind::InvalidArgument, "brick covers need Window x Points");
  const auto pts = all_points(*ground);
  CoverFamily cover;
  cover.ground = ground;
  for (int j = 0; j < layers; ++j) {
    const std::int64_t shift = static_cast<std::int64_t>(j) * length / layers;
    std::map<std::int64_t, std::vector<Index>> bricks;
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      const std::int64_t z = w.word(g)[0] - shift;
      const std::int64_t brick = z >= 0 ? z / length : -((-z + length - 1) / length);
      bricks[brick].push_back(g);
    }
    for (const auto& [_, gs] : bricks) cover.members.push_back(ground->product(gs, pts));
  }
  return cover;
}

CoverFamily make_cylinder_cover(const GroundPtr& ground, const CompactificationModel& model, int prefix) {
  if (ground->n_points() != model.space.size()) fail(ErrorKind::InvalidArgument, "ground and model differ");
  if (prefix < 0) fail(ErrorKind::InvalidArgument, "prefix must be non-negative");
  std::map<std::string, std::vector<Point>> cylinders;
  for (auto x : model.boundary_points()) {
    const auto& label = model.space.label(x);
    // Labels are letter strings; the identity label "1" never lies in the boundary.
    if (static_cast<int>(label.size()) < prefix) fail(ErrorKind::InvalidArgument, "prefix longer than the boundary words");
    cylinders[label.substr(0, static_cast<std::size_t>(prefix))].push_back(x);
  }
  CoverFamily cover;
  cover.ground = ground;
  for (const auto& [_, xs] : cylinders) cover.members.push_back(ground->fiber_product(xs));
  return cover;
}

CoverFamily make_random_disjoint_cover(const GroundPtr& ground, std::uint64_t seed, const RandomCoverParams& params) {
  const auto& w = *ground->window();
  const std::size_t n = ground->n_points();
  if (ground->mode() == ActionMode::PointsOnly) fail(ErrorKind::InvalidArgument, "random covers need Window x Points");
  if (params.blocks < 1) fail(ErrorKind::InvalidArgument, "blocks must be positive");
  std::mt19937_64 rng(seed);
  const std::size_t blocks = std::min<std::size_t>(static_cast<std::size_t>(params.blocks), n);
  std::vector<std::vector<Point>> parts(blocks);
  std::vector<Point> order = all_points(*ground);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    parts[i < blocks ? i : std::uniform_int_distribution<std::size_t>(0, blocks - 1)(rng)].push_back(order[i]);
  }
  std::bernoulli_distribution cut(params.break_probability);
  std::bernoulli_distribution side(0.5);
  CoverFamily cover;
  cover.ground = ground;
  for (auto& part : parts) {
    std::sort(part.begin(), part.end());
    if (!cut(rng)) {
      cover.members.push_back(ground->fiber_product(part));
      continue;
    }
    std::vector<Index> a;
    std::vector<Index> b;
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) (side(rng) ? a : b).push_back(g);
    if (!a.empty()) cover.members.push_back(ground->product(a, part));
    if (!b.empty()) cover.members.push_back(ground->product(b, part));
  }
  return cover;
}

CompactificationModel make_free_orbit_space(const WindowPtr& finite_window, int base, std::uint64_t seed) {
  const auto& w = *finite_window;
  if (w.group().kind() != GroupKind::Finite) fail(ErrorKind::InvalidArgument, "orbit space needs a finite group");
  if (base < 1) fail(ErrorKind::InvalidArgument, "base must be >= 1");
  const std::size_t order = w.size();
  for (Index g = 0; g < static_cast<Index>(order); ++g) {
    for (Index h = 0; h < static_cast<Index>(order); ++h) {
      if (!w.multiply(g, h)) fail(ErrorKind::InvalidArgument, "window does not hold the whole group");
    }
  }
  const std::size_t n = order * static_cast<std::size_t>(base);

  // Point b * |H| + h is h applied to base point b.
  std::vector<Point> table(order * n);
  for (Index g = 0; g < static_cast<Index>(order); ++g) {
    for (std::size_t p = 0; p < n; ++p) {
      const auto h = static_cast<Index>(p % order);
      table[static_cast<std::size_t>(g) * n + p] = static_cast<Point>(p - p % order + static_cast<std::size_t>(*w.multiply(g, h)));
    }
  }

  std::mt19937_64 rng(seed);
  const auto side = static_cast<std::int64_t>(4 * n);
  std::uniform_int_distribution<std::int64_t> coord(0, side - 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> at;
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  while (at.size() < n) {
    std::pair<std::int64_t, std::int64_t> c{coord(rng), coord(rng)};
    if (used.insert(c).second) at.push_back(c);
  }
  auto d0 = [&](std::size_t a, std::size_t b) {
    return std::abs(at[a].first - at[b].first) + std::abs(at[a].second - at[b].second);
  };
  std::vector<Rational> dist(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("y" + std::to_string(a / order) + "." + w.format(static_cast<Index>(a % order)));
    for (std::size_t b = 0; b < n; ++b) {
      std::int64_t best = 0;
      for (Index g = 0; g < static_cast<Index>(order); ++g) {
        const auto row = static_cast<std::size_t>(g) * n;
        best = std::max(best, d0(static_cast<std::size_t>(table[row + a]), static_cast<std::size_t>(table[row + b])));
      }
      dist[a * n + b] = Rational(best);
    }
  }

  CompactificationModel model;
  model.space = FiniteMetricSpace(std::move(labels), std::move(dist));
  model.boundary.assign(n, 0);
  model.action = PartialAction(finite_window, n, std::move(table));
  return model;
}

CoverFamily make_section_cover(const GroundPtr& ground, std::uint64_t seed, int sections) {
  if (ground->mode() != ActionMode::PointsOnly || !ground->action()) {
    fail(ErrorKind::InvalidArgument, "section covers need a PointsOnly ground with an action");
  }
  const auto& action = *ground->action();
  const auto& w = *ground->window();
  const std::size_t n = ground->n_points();

  std::vector<std::vector<Point>> orbits;
  std::vector<char> seen(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::set<Point> orbit;
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      Point y = action.act(g, static_cast<Point>(x));
      if (y == kUndefined) fail(ErrorKind::Precondition, "section covers need a total action");
      orbit.insert(y);
    }
    for (auto y : orbit) seen[static_cast<std::size_t>(y)] = 1;
    orbits.emplace_back(orbit.begin(), orbit.end());
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  CoverFamily cover;
  cover.ground = ground;
  std::set<std::vector<std::size_t>> distinct;
  auto add = [&](const Subset& s) {
    std::vector<std::size_t> key;
    for (auto p = s.find_first(); p != Subset::npos; p = s.find_next(p)) key.push_back(p);
    if (!key.empty() && distinct.insert(key).second) cover.members.push_back(s);
  };
  std::vector<char> covered(orbits.size(), 0);
  for (int s = 0; s < sections; ++s) {
    Subset section = ground->empty();
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      if (!coin(rng)) continue;
      std::uniform_int_distribution<std::size_t> pick(0, orbits[o].size() - 1);
      section.set(static_cast<std::size_t>(orbits[o][pick(rng)]));
      covered[o] = 1;
    }
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) add(translate(*ground, section, g));
  }
  Subset saturated = ground->empty();
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    if (coin(rng)) {
      for (auto y : orbits[o]) saturated.set(static_cast<std::size_t>(y));
    }
  }
  add(saturated);
  Subset rest = ground->empty();
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    if (covered[o] || saturated.test(static_cast<std::size_t>(orbits[o][0]))) continue;
    for (auto y : orbits[o]) rest.set(static_cast<std::size_t>(y));
  }
  add(rest);
  return cover;
}

}  // namespace ccw

#include "ccw/refine.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>

namespace ccw {

QuotientSpace quotient_space(const FiniteMetricSpace& y, const PartialAction& action) {
  const auto& w = *action.window();
  const std::size_t n = y.size();
  if (action.n_points() != n) fail(ErrorKind::InvalidArgument, "action and space differ in size");
  for (Index a = 0; a < static_cast<Index>(w.size()); ++a) {
    for (Index b = 0; b < static_cast<Index>(w.size()); ++b) {
      if (!w.multiply(a, b)) fail(ErrorKind::Precondition, "the window is not the whole finite group");
    }
  }
  if (!action.is_total()) fail(ErrorKind::Precondition, "the action is not total");
  if (!action.is_isometric(y)) fail(ErrorKind::Precondition, "the action is not isometric");

  QuotientSpace out;
  out.class_of.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (out.class_of[x] != n) continue;
    std::set<Point> orbit;
    for (Index h = 0; h < static_cast<Index>(w.size()); ++h) orbit.insert(action.act(h, static_cast<Point>(x)));
    for (auto p : orbit) out.class_of[static_cast<std::size_t>(p)] = out.classes.size();
    out.classes.emplace_back(orbit.begin(), orbit.end());
  }
  const std::size_t m = out.classes.size();
  std::vector<std::string> labels;
  for (const auto& c : out.classes) {
    std::string label = "[";
    label += y.label(c.front());
    label += "]";
    labels.push_back(std::move(label));
  }
  std::vector<Rational> dist(m * m, Rational(0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const Point ya = out.classes[a].front();
      const Point yb = out.classes[b].front();
      std::optional<Rational> best;
      for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
        const Rational& d = y.distance(action.act(h, ya), yb);
        if (!best || d < *best) best = d;
      }
      dist[a * m + b] = *best;
    }
  }
  out.space = FiniteMetricSpace(std::move(labels), std::move(dist));
  return out;
}

namespace {

struct Packer {
  std::vector<std::uint32_t> masks;  // candidate members as point masks
  std::vector<std::size_t> ids;      // input index of each candidate
  std::uint32_t all = 0;
  std::size_t best = 0;
  std::vector<std::vector<std::size_t>> packings;
  std::vector<std::size_t> current;

  void run(std::size_t i, std::uint32_t used) {
    const std::size_t free_points = static_cast<std::size_t>(std::popcount(all & ~used));
    const std::size_t bound = current.size() + std::min(masks.size() - i, free_points);
    if (bound < best) return;
    if (i == masks.size()) {
      if (current.size() > best) {
        best = current.size();
        packings.clear();
      }
      packings.push_back(current);
      return;
    }
    if ((masks[i] & used) == 0) {
      current.push_back(ids[i]);
      run(i + 1, used | masks[i]);
      current.pop_back();
    }
    run(i + 1, used);
  }
};

std::vector<std::size_t> assignment_for(std::size_t n_points, const std::vector<std::vector<Point>>& cover,
                                        const std::vector<std::size_t>& packing,
                                        const std::vector<std::vector<std::size_t>>& containing) {
  std::vector<std::size_t> a(n_points, cover.size());
  for (auto i : packing) {
    for (auto x : cover[i]) a[static_cast<std::size_t>(x)] = i;
  }
  for (std::size_t x = 0; x < n_points; ++x) {
    if (a[x] == cover.size()) a[x] = containing[x].front();
  }
  return a;
}

}  // namespace

Refinement min_dim_refinement(std::size_t n_points, const std::vector<std::vector<Point>>& cover) {
  std::vector<std::vector<Point>> sets;
  for (auto member : cover) {
    std::sort(member.begin(), member.end());
    member.erase(std::unique(member.begin(), member.end()), member.end());
    for (auto x : member) {
      if (x < 0 || static_cast<std::size_t>(x) >= n_points) fail(ErrorKind::InvalidArgument, "point out of range");
    }
    sets.push_back(std::move(member));
  }
  std::vector<std::vector<std::size_t>> containing(n_points);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (auto x : sets[i]) containing[static_cast<std::size_t>(x)].push_back(i);
  }
  for (std::size_t x = 0; x < n_points; ++x) {
    if (containing[x].empty()) fail(ErrorKind::Precondition, "point " + std::to_string(x) + " is not covered");
  }

  Refinement out;
  std::vector<std::size_t> assignment;
  if (n_points <= kExactRefinementLimit) {
    Packer packer;
    packer.all = n_points == 32 ? ~0u : ((1u << n_points) - 1u);
    std::set<std::vector<Point>> seen;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      // Equal members overlap, so only the first copy can be kept whole.
      if (sets[i].empty() || !seen.insert(sets[i]).second) continue;
      std::uint32_t mask = 0;
      for (auto x : sets[i]) mask |= 1u << x;
      packer.masks.push_back(mask);
      packer.ids.push_back(i);
    }
    packer.run(0, 0);
    for (const auto& packing : packer.packings) {
      auto a = assignment_for(n_points, sets, packing, containing);
      if (assignment.empty() || a < assignment) assignment = std::move(a);
    }
  } else {
    out.optimal = false;
    std::vector<char> used(n_points, 0);
    std::vector<std::size_t> packing;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].empty()) continue;
      bool free = std::none_of(sets[i].begin(), sets[i].end(), [&](Point x) { return used[static_cast<std::size_t>(x)]; });
      if (!free) continue;
      packing.push_back(i);
      for (auto x : sets[i]) used[static_cast<std::size_t>(x)] = 1;
    }
    assignment = assignment_for(n_points, sets, packing, containing);
  }

  std::vector<std::vector<Point>> blocks(sets.size());
  for (std::size_t x = 0; x < n_points; ++x) blocks[assignment[x]].push_back(static_cast<Point>(x));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (blocks[i].empty()) continue;
    if (blocks[i] == sets[i]) ++out.unchanged;
    out.members.push_back(std::move(blocks[i]));
    out.parent.push_back(i);
  }
  out.assignment = std::move(assignment);
  out.dimension = n_points == 0 ? -1 : 0;
  return out;
}

Lift equivariant_lift(const std::vector<std::vector<Point>>& refinement, const CoverFamily& cover,
                      const QuotientSpace& quotient) {
  const auto& ground = *cover.ground;
  if (ground.mode() != ActionMode::PointsOnly) fail(ErrorKind::InvalidArgument, "the cover must live on the points");
  if (!ground.action()) fail(ErrorKind::InvalidArgument, "the cover carries no action");
  const auto& action = *ground.action();
  const auto& w = *ground.window();
  const std::size_t n = ground.n_points();
  if (quotient.class_of.size() != n) fail(ErrorKind::InvalidArgument, "quotient and cover differ in size");

  auto image = [&](Index h, const Subset& u) {
    Subset out = ground.empty();
    for (auto p = u.find_first(); p != Subset::npos; p = u.find_next(p)) {
      out.set(static_cast<std::size_t>(action.act(h, static_cast<Point>(p))));
    }
    return out;
  };

  Lift out;
  out.cover.ground = cover.ground;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& v : refinement) {
    Subset preimage = ground.empty();
    for (auto c : v) {
      for (auto y : quotient.classes.at(static_cast<std::size_t>(c))) preimage.set(static_cast<std::size_t>(y));
    }
    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < cover.members.size() && !chosen; ++i) {
      std::vector<char> hit(quotient.classes.size(), 0);
      const auto& u = cover.members[i];
      for (auto p = u.find_first(); p != Subset::npos; p = u.find_next(p)) hit[quotient.class_of[p]] = 1;
      if (std::all_of(v.begin(), v.end(), [&](Point c) { return hit[static_cast<std::size_t>(c)] != 0; })) chosen = i;
    }
    if (!chosen) fail(ErrorKind::Precondition, "no cover member projects onto a refinement member");
    out.choice.push_back(*chosen);
    const Subset& u = cover.members[*chosen];

    std::vector<Subset> translates;
    for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
      Subset t = image(h, u);
      if (std::find(translates.begin(), translates.end(), t) == translates.end()) translates.push_back(std::move(t));
    }
    for (std::size_t a = 0; a < translates.size(); ++a) {
      for (std::size_t b = a + 1; b < translates.size(); ++b) {
        if (translates[a].intersects(translates[b])) out.parts_disjoint = false;
      }
      Subset part = translates[a] & preimage;
      if (part.none()) continue;
      std::vector<std::size_t> key;
      for (auto p = part.find_first(); p != Subset::npos; p = part.find_next(p)) key.push_back(p);
      if (seen.insert(key).second) out.cover.members.push_back(std::move(part));
    }
    if (window_stabilizer(ground, u & preimage) != window_stabilizer(ground, u)) out.stabilizers_match = false;
  }

  Subset covered = ground.empty();
  for (const auto& m : out.cover.members) {
    covered |= m;
    bool inside = std::any_of(cover.members.begin(), cover.members.end(), [&](const Subset& u) { return m.is_subset_of(u); });
    if (!inside) out.refines = false;
  }
  out.covers = covered.all();
  out.dim_lift = family_dimension(out.cover);
  std::vector<int> count(quotient.classes.size(), 0);
  for (const auto& v : refinement) {
    for (auto c : v) ++count[static_cast<std::size_t>(c)];
  }
  out.dim_refinement = refinement.empty() ? -1 : *std::max_element(count.begin(), count.end()) - 1;
  return out;
}

}  // namespace ccw

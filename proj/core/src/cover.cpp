#include "ccw/cover.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <numeric>

namespace ccw {

namespace {

void require_group_fibers(const GroundSet& ground, const char* what) {
  if (ground.mode() == ActionMode::PointsOnly) {
    fail(ErrorKind::Precondition, std::string(what) + " needs a Window x Points ground set");
  }
}

class BallCache {
 public:
  BallCache(const GroupWindow& w, const Rational& alpha) : w_(w), alpha_(alpha), balls_(w.size()) {}
  const std::vector<Index>& operator()(Index g) {
    auto& slot = balls_[static_cast<std::size_t>(g)];
    if (!slot) slot = w_.ball(g, alpha_).elements;
    return *slot;
  }

 private:
  const GroupWindow& w_;
  Rational alpha_;
  std::vector<std::optional<std::vector<Index>>> balls_;
};

std::vector<Point> all_points(const GroundSet& ground, std::span<const Point> points) {
  if (!points.empty()) return {points.begin(), points.end()};
  std::vector<Point> out(ground.n_points());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace

bool CoverFamily::covers(const Subset& region) const {
  Subset covered = ground->empty();
  for (const auto& m : members) covered |= m;
  return region.is_subset_of(covered);
}

bool CoverFamily::covers_ground() const { return covers(ground->full()); }

std::vector<std::vector<std::uint32_t>> membership(const CoverFamily& cover) {
  std::vector<std::vector<std::uint32_t>> out(cover.ground->size());
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    const auto& m = cover.members[i];
    for (auto p = m.find_first(); p != Subset::npos; p = m.find_next(p)) out[p].push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

int family_dimension(const CoverFamily& cover) {
  if (cover.members.empty()) return -1;
  std::vector<int> count(cover.ground->size(), 0);
  int best = 0;
  for (const auto& m : cover.members) {
    for (auto p = m.find_first(); p != Subset::npos; p = m.find_next(p)) best = std::max(best, ++count[p]);
  }
  return best - 1;
}

std::optional<std::size_t> max_multiplicity_point(const CoverFamily& cover) {
  if (cover.members.empty()) return std::nullopt;
  std::vector<int> count(cover.ground->size(), 0);
  for (const auto& m : cover.members) {
    for (auto p = m.find_first(); p != Subset::npos; p = m.find_next(p)) ++count[p];
  }
  auto it = std::max_element(count.begin(), count.end());
  if (*it == 0) return std::nullopt;
  return static_cast<std::size_t>(it - count.begin());
}

LebesgueResult lebesgue_check(const CoverFamily& cover, const Rational& alpha, std::span<const Point> points) {
  const auto& ground = *cover.ground;
  require_group_fibers(ground, "lebesgue_check");
  if (alpha <= 0) fail(ErrorKind::InvalidArgument, "alpha must be positive");
  const auto& w = *ground.window();
  auto inner = w.inner_window(alpha);
  if (inner.empty()) {
    fail(ErrorKind::EmptyInnerWindow, "no window element has an unclipped ball of radius " + to_string(alpha));
  }
  LebesgueResult result;
  result.inner_size = inner.size();
  result.alpha_is_infinite = alpha == Rational(w.radius() + 1);
  const auto xs = all_points(ground, points);
  const auto members_at = membership(cover);
  for (auto g : inner) {
    const auto ball = w.ball(g, alpha).elements;
    for (auto x : xs) {
      bool found = false;
      for (auto m : members_at[ground.index(g, x)]) {
        const auto& u = cover.members[m];
        if (std::all_of(ball.begin(), ball.end(), [&](Index h) { return u.test(ground.index(h, x)); })) {
          found = true;
          break;
        }
      }
      if (!found) {
        result.pass = false;
        result.witness = ground.index(g, x);
        return result;
      }
    }
  }
  return result;
}

Subset translate(const GroundSet& ground, const Subset& u, Index h) {
  Subset out = ground.empty();
  for (auto p = u.find_first(); p != Subset::npos; p = u.find_next(p)) {
    if (auto hp = ground.act(h, p)) out.set(*hp);
  }
  return out;
}

TranslateComparison compare_translate(const GroundSet& ground, const Subset& u, Index h, const Subset& v) {
  TranslateComparison c;
  c.total = u.count();
  Subset image = translate(ground, u, h);
  c.defined = 0;
  for (auto p = u.find_first(); p != Subset::npos; p = u.find_next(p)) {
    if (ground.act(h, p)) ++c.defined;
  }
  if (c.defined == 0) return c;
  if (!image.intersects(v)) {
    c.relation = TranslateRelation::Disjoint;
  } else if (image.is_subset_of(v) &&
             translate(ground, v, ground.window()->inverse(h)).is_subset_of(u)) {
    c.relation = TranslateRelation::Equal;
  } else {
    c.relation = TranslateRelation::Overlap;
  }
  return c;
}

const char* to_string(FSubsetVerdict::Status s) {
  switch (s) {
    case FSubsetVerdict::Status::Ok: return "ok";
    case FSubsetVerdict::Status::OrbitOverlap: return "orbit-overlap";
    case FSubsetVerdict::Status::StabilizerViolation: return "stabilizer-violation";
    case FSubsetVerdict::Status::InsufficientDomain: return "insufficient-domain";
  }
  return "?";
}

FSubsetVerdict f_subset_check(const GroundSet& ground, const Subset& u, const FamilyPredicate& family) {
  const auto& w = *ground.window();
  FSubsetVerdict v;
  v.window_size = w.size();
  if (u.none()) {
    v.determined = w.size();
    v.family = {true, true};
    return v;
  }
  for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
    auto c = compare_translate(ground, u, g, u);
    switch (c.relation) {
      case TranslateRelation::Equal:
        ++v.determined;
        v.stabilizer.push_back(g);
        break;
      case TranslateRelation::Disjoint:
        ++v.determined;
        break;
      case TranslateRelation::Overlap:
        ++v.determined;
        if (!v.witness) {
          v.status = FSubsetVerdict::Status::OrbitOverlap;
          v.witness = g;
        }
        break;
      case TranslateRelation::Undetermined:
        break;
    }
  }
  std::vector<Word> gens;
  for (auto g : v.stabilizer) gens.push_back(w.word(g));
  v.family = family.contains(w.group(), gens);
  if (v.status == FSubsetVerdict::Status::Ok) {
    if (!v.family.holds) {
      v.status = FSubsetVerdict::Status::StabilizerViolation;
      for (auto g : v.stabilizer) {
        std::vector<Word> single{w.word(g)};
        if (!family.contains(w.group(), single).holds) {
          v.witness = g;
          break;
        }
      }
    } else if (w.size() > 1 && v.determined <= 1) {
      v.status = FSubsetVerdict::Status::InsufficientDomain;
    }
  }
  return v;
}

std::vector<Index> window_stabilizer(const GroundSet& ground, const Subset& u) {
  std::vector<Index> out;
  for (Index g = 0; g < static_cast<Index>(ground.window()->size()); ++g) {
    if (compare_translate(ground, u, g, u).relation == TranslateRelation::Equal) out.push_back(g);
  }
  return out;
}

std::vector<Index> window_stabilizer(const GroundSet& ground, const Subset& u, const Subset& domain) {
  std::vector<Index> out;
  for (Index g = 0; g < static_cast<Index>(ground.window()->size()); ++g) {
    bool fixed = true;
    for (auto p = domain.find_first(); fixed && p != Subset::npos; p = domain.find_next(p)) {
      auto q = ground.act(g, p);
      if (q && domain.test(*q) && u.test(p) != u.test(*q)) fixed = false;
    }
    if (fixed) out.push_back(g);
  }
  return out;
}

std::vector<std::int32_t> member_action(const CoverFamily& cover) {
  const auto& ground = *cover.ground;
  const auto& w = *ground.window();
  const std::size_t n = cover.members.size();
  const auto members_at = membership(cover);
  std::vector<std::int32_t> out(n * w.size(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& u = cover.members[i];
    for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
      Subset image = translate(ground, u, h);
      auto first = image.find_first();
      if (first == Subset::npos) continue;
      for (auto j : members_at[first]) {
        const auto& v = cover.members[j];
        if (image.is_subset_of(v) && translate(ground, v, w.inverse(h)).is_subset_of(u)) {
          out[i * w.size() + static_cast<std::size_t>(h)] = static_cast<std::int32_t>(j);
          break;
        }
      }
    }
  }
  return out;
}

std::vector<Orbit> compute_orbits(const CoverFamily& cover) {
  const std::size_t n = cover.members.size();
  const std::size_t ws = cover.ground->window()->size();
  auto action = member_action(cover);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = 0; h < ws; ++h) {
      auto j = action[i * ws + h];
      if (j < 0) continue;
      auto a = root(i);
      auto b = root(static_cast<std::size_t>(j));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<Orbit> orbits;
  std::vector<std::int64_t> orbit_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = root(i);
    if (orbit_of[r] < 0) {
      orbit_of[r] = static_cast<std::int64_t>(orbits.size());
      Orbit o;
      o.representative = i;
      o.stabilizer = window_stabilizer(*cover.ground, cover.members[i]);
      orbits.push_back(std::move(o));
    }
    orbits[static_cast<std::size_t>(orbit_of[r])].members.push_back(i);
  }
  return orbits;
}

MultiplicityResult g_multiplicity(const CoverFamily& cover, const Rational& d) {
  const auto& ground = *cover.ground;
  require_group_fibers(ground, "g_multiplicity");
  const auto& w = *ground.window();
  auto inner = w.inner_window(d);
  if (inner.empty()) fail(ErrorKind::EmptyInnerWindow, "no window element has an unclipped ball of radius " + to_string(d));
  MultiplicityResult result;
  result.inner_size = inner.size();
  const auto members_at = membership(cover);
  std::vector<std::size_t> stamp(cover.members.size(), 0);
  std::size_t epoch = 0;
  for (auto g : inner) {
    const auto ball = w.ball(g, d).elements;
    for (std::size_t xi = 0; xi < ground.n_points(); ++xi) {
      const auto x = static_cast<Point>(xi);
      ++epoch;
      int count = 0;
      for (auto h : ball) {
        for (auto m : members_at[ground.index(h, x)]) {
          if (stamp[m] != epoch) {
            stamp[m] = epoch;
            ++count;
          }
        }
      }
      if (count > result.value) {
        result.value = count;
        result.witness = ground.index(g, x);
      }
    }
  }
  return result;
}

Subset pad(const GroundSet& ground, const Subset& u, const Rational& alpha) {
  require_group_fibers(ground, "pad");
  if (alpha <= 0) fail(ErrorKind::InvalidArgument, "pad radius must be positive");
  BallCache balls(*ground.window(), alpha);
  Subset out = ground.empty();
  for (auto p = u.find_first(); p != Subset::npos; p = u.find_next(p)) {
    const Point x = ground.point_part(p);
    for (auto h : balls(ground.group_part(p))) out.set(ground.index(h, x));
  }
  return out;
}

Subset shrink(const GroundSet& ground, const Subset& u, const Rational& alpha) {
  return ~pad(ground, ~u, alpha);
}

Subset pad_shrink(const GroundSet& ground, const Subset& u, const Rational& alpha) {
  if (alpha > 0) return pad(ground, u, alpha);
  if (alpha < 0) return shrink(ground, u, -alpha);
  return u;
}

Subset clipped_region(const GroundSet& ground, const Rational& alpha) {
  require_group_fibers(ground, "clipped_region");
  Subset out = ground.empty();
  const auto& w = *ground.window();
  for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
    if (w.in_inner(g, abs(alpha))) continue;
    for (std::size_t x = 0; x < ground.n_points(); ++x) out.set(ground.index(g, static_cast<Point>(x)));
  }
  return out;
}

DisjointnessResult r_disjointness_check(const CoverFamily& cover, const Rational& r) {
  DisjointnessResult result;
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    Subset padded = pad(*cover.ground, cover.members[i], r);
    for (std::size_t j = 0; j < cover.members.size(); ++j) {
      if (i == j) continue;
      Subset meet = padded & cover.members[j];
      if (auto p = meet.find_first(); p != Subset::npos) {
        result.pass = false;
        result.first = i;
        result.second = j;
        result.witness = p;
        return result;
      }
    }
  }
  return result;
}

CoverFamily subfamily(const CoverFamily& cover, std::span<const std::size_t> indices) {
  CoverFamily out;
  out.ground = cover.ground;
  for (auto i : indices) out.members.push_back(cover.members.at(i));
  return out;
}

BoundarySplit split_boundary_parts(const CoverFamily& cover, const std::vector<char>& boundary) {
  const auto& ground = *cover.ground;
  if (boundary.size() != ground.n_points()) fail(ErrorKind::InvalidArgument, "boundary flags do not match the points");
  std::vector<Point> bpts;
  for (std::size_t x = 0; x < boundary.size(); ++x) {
    if (boundary[x]) bpts.push_back(static_cast<Point>(x));
  }
  Subset bset = ground.fiber_product(bpts);
  BoundarySplit split;
  std::vector<char> in_boundary(cover.members.size(), 0);
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    in_boundary[i] = cover.members[i].intersects(bset);
    (in_boundary[i] ? split.boundary_part : split.interior_part).push_back(i);
  }
  const std::size_t ws = ground.window()->size();
  auto action = member_action(cover);
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    for (std::size_t h = 0; h < ws; ++h) {
      auto j = action[i * ws + h];
      if (j >= 0 && in_boundary[static_cast<std::size_t>(j)] != in_boundary[i]) {
        (in_boundary[i] ? split.boundary_invariant : split.interior_invariant) = false;
      }
    }
  }
  split.dim_interior = family_dimension(subfamily(cover, split.interior_part));
  split.dim_boundary = family_dimension(subfamily(cover, split.boundary_part));
  split.dim_total = family_dimension(cover);
  split.bound = split.dim_interior + split.dim_boundary + 1;
  return split;
}

}  // namespace ccw

#include "ccw/boundary.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <set>

namespace ccw {

namespace {

bool same_ground(const GroundSet& a, const GroundSet& b) {
  return a.window() == b.window() && a.n_points() == b.n_points() && a.mode() == b.mode();
}

std::vector<Point> fiber_at(const GroundSet& ground, const Subset& u, Index g) {
  std::vector<Point> out;
  for (std::size_t x = 0; x < ground.n_points(); ++x) {
    if (u.test(ground.index(g, static_cast<Point>(x)))) out.push_back(static_cast<Point>(x));
  }
  return out;
}

std::vector<Point> intersect(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SimplicialInteriorCover simplicial_interior_cover(const SimplicialComplex& k, const FamilyPredicate& family) {
  if (!k.has_action()) fail(ErrorKind::Precondition, "complex carries no group action");
  const auto& w = *k.window();
  SimplicialInteriorCover out;
  const auto sd = barycentric_subdivision(k);
  const auto& chains = sd.complex.simplices();
  const std::size_t n = chains.size();

  std::vector<std::string> labels;
  for (const auto& c : chains) {
    std::string label;
    for (auto v : c) label += sd.complex.labels()[static_cast<std::size_t>(v)];
    labels.push_back(label);
  }
  std::vector<Rational> dist(n * n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0;
  out.points = FiniteMetricSpace(std::move(labels), std::move(dist));
  out.chain_of_point = chains;

  std::vector<Point> table(w.size() * n, kUndefined);
  for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
    for (std::size_t i = 0; i < n; ++i) {
      if (auto image = sd.complex.act(g, chains[i])) {
        if (auto idx = sd.complex.simplex_index(*image)) table[static_cast<std::size_t>(g) * n + i] = static_cast<Point>(*idx);
      }
    }
  }
  out.action = std::make_shared<PartialAction>(k.window(), n, std::move(table));
  auto ground = std::make_shared<GroundSet>(k.window(), n, ActionMode::Diagonal, out.action);
  out.cover.ground = ground;

  for (std::size_t s = 0; s < k.simplices().size(); ++s) {
    const auto& sigma = k.simplices()[s];
    auto stab = k.stabilizer(sigma);
    std::vector<Word> gens;
    for (auto g : stab) gens.push_back(w.word(g));
    if (!family.contains(w.group(), gens).holds) {
      fail(ErrorKind::Precondition, "stabilizer of a simplex leaves the family " + family.name());
    }
    const Vertex bary = sd.vertex_of.at(sigma);
    std::vector<Point> nbhd;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::binary_search(chains[i].begin(), chains[i].end(), bary)) nbhd.push_back(static_cast<Point>(i));
    }
    out.cover.members.push_back(ground->fiber_product(nbhd));
    out.simplex_of_member.push_back(sigma);
    out.stabilizers.push_back(std::move(stab));
  }
  for (std::size_t a = 0; a < out.cover.members.size(); ++a) {
    for (std::size_t b = a + 1; b < out.cover.members.size(); ++b) {
      if (out.simplex_of_member[a].size() == out.simplex_of_member[b].size() &&
          out.cover.members[a].intersects(out.cover.members[b])) {
        out.same_dimension_disjoint = false;
      }
    }
  }
  out.dimension = family_dimension(out.cover);
  return out;
}

ProperInteriorCover proper_interior_cover(const CompactificationModel& model, const FamilyPredicate& family) {
  const auto& action = model.action;
  const auto& w = *action.window();
  const auto& space = model.space;
  auto action_ptr = std::make_shared<PartialAction>(action);
  auto ground = std::make_shared<GroundSet>(action.window(), space.size(), ActionMode::Diagonal, action_ptr);
  ProperInteriorCover out;
  out.cover.ground = ground;

  const auto interior = model.interior_points();
  auto image = [&](Index g, const std::vector<Point>& set, bool& complete) {
    std::vector<Point> img;
    complete = true;
    for (auto y : set) {
      Point gy = action.act(g, y);
      if (gy == kUndefined) {
        complete = false;
      } else {
        img.push_back(gy);
      }
    }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
  };

  std::vector<char> covered(space.size(), 0);
  std::set<std::vector<Point>> seen_members;
  for (auto x : interior) {
    if (covered[static_cast<std::size_t>(x)]) continue;
    std::vector<Index> stab_x;
    std::optional<Rational> r0;
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      Point gx = action.act(g, x);
      if (gx == kUndefined) continue;
      if (gx == x) {
        stab_x.push_back(g);
      } else {
        Rational half = space.distance(x, gx) / 2;
        if (!r0 || half < *r0) r0 = half;
      }
    }
    {
      std::vector<Word> gens;
      for (auto g : stab_x) gens.push_back(w.word(g));
      if (!family.contains(w.group(), gens).holds) {
        fail(ErrorKind::Precondition, "stabilizer of point " + space.label(x) + " leaves the family " + family.name());
      }
    }
    auto ball = [&](std::optional<Rational> radius) {
      std::vector<Point> out_ball;
      for (auto y : interior) {
        if (!radius || space.distance(x, y) < *radius) out_ball.push_back(y);
      }
      return out_ball;
    };
    const auto u0 = ball(r0);
    const auto u1 = ball(r0 ? std::optional<Rational>(*r0 / 2) : std::nullopt);

    std::size_t rs = 0;
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      bool complete = false;
      if (!intersect(image(g, u0, complete), u0).empty()) ++rs;
    }
    out.return_set_size[x] = rs;

    std::vector<Point> u2 = u1;
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      Point gx = action.act(g, x);
      if (gx == kUndefined || gx == x) continue;
      bool complete = false;
      auto moved = image(g, u1, complete);
      std::vector<Point> rest;
      std::set_difference(u2.begin(), u2.end(), moved.begin(), moved.end(), std::back_inserter(rest));
      u2 = std::move(rest);
    }
    std::vector<Point> ux = u2;
    for (auto g : stab_x) {
      bool complete = false;
      ux = intersect(ux, image(g, u2, complete));
    }
    out.representatives.push_back(x);
    out.neighbourhood[x] = ux;

    std::vector<Index> stab_u;
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      bool complete = false;
      auto moved = image(g, ux, complete);
      if (complete && moved == ux) stab_u.push_back(g);
    }
    if (stab_u != stab_x) out.stabilizers_match = false;

    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      bool complete = false;
      auto moved = image(g, ux, complete);
      if (!complete || moved.empty()) continue;
      for (auto y : moved) covered[static_cast<std::size_t>(y)] = 1;
      if (seen_members.insert(moved).second) out.cover.members.push_back(ground->fiber_product(moved));
    }
  }
  return out;
}

std::map<Point, Rational> boundary_epsilon(const CompactificationModel& model,
                                           const std::vector<std::vector<Point>>& fiber_sets) {
  const auto& space = model.space;
  const auto boundary = model.boundary_points();
  std::vector<Rational> candidates;
  for (const auto& d : space.distinct_distances()) {
    if (d <= 1) candidates.push_back(d);
  }
  candidates.push_back(1);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::map<Point, Rational> eps;
  for (auto x : boundary) {
    std::optional<std::vector<Point>> common;
    for (const auto& y : fiber_sets) {
      if (!std::binary_search(y.begin(), y.end(), x)) continue;
      common = common ? intersect(*common, y) : y;
    }
    if (!common) fail(ErrorKind::Precondition, "boundary point " + space.label(x) + " lies in no reference set");
    Rational best = 0;
    for (const auto& c : candidates) {
      bool ok = std::all_of(boundary.begin(), boundary.end(), [&](Point y) {
        return !(space.distance(x, y) < c) || std::binary_search(common->begin(), common->end(), y);
      });
      if (ok) best = c;
    }
    eps[x] = best;
  }
  return eps;
}

std::vector<Point> enlarge(const CompactificationModel& model, const std::map<Point, Rational>& eps,
                           const std::vector<Point>& y) {
  std::vector<char> in(model.space.size(), 0);
  for (auto x : y) {
    const Rational radius = eps.at(x) / 2;
    for (std::size_t z = 0; z < model.space.size(); ++z) {
      if (model.space.distance(x, static_cast<Point>(z)) < radius) in[z] = 1;
    }
  }
  std::vector<Point> out;
  for (std::size_t z = 0; z < in.size(); ++z) {
    if (in[z]) out.push_back(static_cast<Point>(z));
  }
  return out;
}

BoundaryExtension extend_boundary_cover(const CoverFamily& boundary_cover, const CompactificationModel& model) {
  const auto& ground = *boundary_cover.ground;
  const auto& w = *ground.window();
  if (ground.mode() == ActionMode::PointsOnly) fail(ErrorKind::Precondition, "needs Window x Points");
  if (ground.n_points() != model.space.size()) fail(ErrorKind::InvalidArgument, "cover and model differ");
  if (boundary_cover.members.empty()) fail(ErrorKind::EmptyCover, "the boundary cover has no members");
  const Subset boundary_region = ground.fiber_product(model.boundary_points());
  for (const auto& v : boundary_cover.members) {
    if (!v.is_subset_of(boundary_region)) fail(ErrorKind::Precondition, "boundary cover member leaves Window x boundary");
  }
  const bool diagonal = ground.mode() == ActionMode::Diagonal;

  BoundaryExtension out;
  std::set<std::vector<Point>> refs;
  for (const auto& v : boundary_cover.members) {
    if (diagonal) {
      auto f = fiber_at(ground, v, w.identity());
      if (!f.empty()) refs.insert(std::move(f));
    } else {
      for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
        auto f = fiber_at(ground, v, g);
        if (!f.empty()) refs.insert(std::move(f));
      }
    }
  }
  out.fiber_sets.assign(refs.begin(), refs.end());
  out.epsilon = boundary_epsilon(model, out.fiber_sets);

  std::size_t fibers = 0;
  std::size_t complete_fibers = 0;
  out.family.ground = boundary_cover.ground;
  for (const auto& v : boundary_cover.members) {
    Subset u = ground.empty();
    for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
      auto vg = fiber_at(ground, v, g);
      if (vg.empty()) continue;
      ++fibers;
      if (!diagonal) {
        for (auto z : enlarge(model, out.epsilon, vg)) u.set(ground.index(g, z));
        ++complete_fibers;
        continue;
      }
      const Index ginv = w.inverse(g);
      bool complete = true;
      std::vector<Point> pulled;
      for (auto x : vg) {
        Point y = model.action.act(ginv, x);
        if (y == kUndefined) {
          complete = false;
        } else {
          pulled.push_back(y);
        }
      }
      std::sort(pulled.begin(), pulled.end());
      pulled.erase(std::unique(pulled.begin(), pulled.end()), pulled.end());
      for (auto z : enlarge(model, out.epsilon, pulled)) {
        Point gz = model.action.act(g, z);
        if (gz == kUndefined) {
          complete = false;
        } else {
          u.set(ground.index(g, gz));
        }
      }
      // Boundary points of V_g are kept even when their translates are undefined.
      for (auto x : vg) u.set(ground.index(g, x));
      if (complete) ++complete_fibers;
    }
    out.family.members.push_back(std::move(u));
  }
  out.coverage = fibers == 0 ? Rational(1)
                             : Rational(static_cast<std::int64_t>(complete_fibers), static_cast<std::int64_t>(fibers));

  for (std::size_t i = 0; i < boundary_cover.members.size(); ++i) {
    if ((out.family.members[i] & boundary_region) != boundary_cover.members[i]) out.restriction_exact = false;
  }

  // Intersection law on the reference sets: all subfamilies when small, else pairs and triples.
  const auto& ys = out.fiber_sets;
  std::vector<std::vector<Point>> enlarged;
  for (const auto& y : ys) enlarged.push_back(enlarge(model, out.epsilon, y));
  auto check = [&](const std::vector<std::size_t>& pick) {
    std::vector<Point> lhs = enlarged[pick[0]];
    std::vector<Point> common = ys[pick[0]];
    for (std::size_t i = 1; i < pick.size(); ++i) {
      lhs = intersect(lhs, enlarged[pick[i]]);
      common = intersect(common, ys[pick[i]]);
    }
    ++out.intersections_checked;
    if (lhs != enlarge(model, out.epsilon, common)) out.intersection_law = false;
  };
  if (ys.size() <= 12) {
    for (std::uint32_t mask = 1; mask < (1u << ys.size()); ++mask) {
      std::vector<std::size_t> pick;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        if (mask & (1u << i)) pick.push_back(i);
      }
      if (pick.size() >= 2) check(pick);
    }
  } else {
    for (std::size_t a = 0; a < ys.size(); ++a) {
      for (std::size_t b = a + 1; b < ys.size(); ++b) {
        check({a, b});
        for (std::size_t c = b + 1; c < ys.size(); ++c) check({a, b, c});
      }
    }
  }

  auto source_action = member_action(boundary_cover);
  for (std::size_t i = 0; i < boundary_cover.members.size(); ++i) {
    for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
      auto j = source_action[i * w.size() + static_cast<std::size_t>(h)];
      if (j < 0) continue;
      ++out.equivariance_checked;
      auto rel = compare_translate(ground, out.family.members[i], h, out.family.members[static_cast<std::size_t>(j)]);
      if (rel.relation != TranslateRelation::Equal) out.equivariant = false;
    }
  }
  out.dim_source = family_dimension(boundary_cover);
  out.dim_extension = family_dimension(out.family);
  return out;
}

AssembledCover assemble_full_cover(const CoverFamily& boundary_part, const CoverFamily& interior_part,
                                   const CompactificationModel& model, const Rational& alpha) {
  if (!same_ground(*boundary_part.ground, *interior_part.ground)) {
    fail(ErrorKind::InvalidArgument, "both parts must live on the same ground set");
  }
  const auto& ground = *boundary_part.ground;
  AssembledCover out;
  out.family.ground = boundary_part.ground;
  out.family.members = boundary_part.members;
  out.family.members.insert(out.family.members.end(), interior_part.members.begin(), interior_part.members.end());
  if (!out.family.covers_ground()) {
    Subset covered = ground.empty();
    for (const auto& m : out.family.members) covered |= m;
    auto gap = (~covered).find_first();
    fail(ErrorKind::Precondition, "coverage gap at " + ground.format(gap));
  }
  out.dim_boundary_part = family_dimension(boundary_part);
  out.dim_interior_part = family_dimension(interior_part);
  out.dim = family_dimension(out.family);
  out.bound = out.dim_boundary_part + out.dim_interior_part + 1;
  out.lebesgue = lebesgue_check(out.family, alpha);
  const auto bpts = model.boundary_points();
  const auto ipts = model.interior_points();
  if (!bpts.empty()) out.boundary_lebesgue = lebesgue_check(boundary_part, alpha, bpts);
  if (!ipts.empty() && !interior_part.members.empty()) {
    out.interior_lebesgue = lebesgue_check(interior_part, Rational(ground.window()->radius() + 1), ipts);
  }
  return out;
}

}  // namespace ccw

#include "ccw/characterisations.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ccw {

namespace {

void require_nonempty(const CoverFamily& cover) {
  if (cover.members.empty()) fail(ErrorKind::EmptyCover, "the cover has no members");
}

std::vector<std::string> member_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("U" + std::to_string(i));
  return labels;
}

/// Nerve of the realized supports together with their defined translates.
SimplicialComplex nerve_with_action(const CoverFamily& cover, const std::vector<L1Point>& table, const Subset& domain) {
  const std::size_t m = cover.members.size();
  const auto& w = *cover.ground->window();
  auto action = member_action(cover);
  std::set<Simplex> simplices;
  for (auto p = domain.find_first(); p != Subset::npos; p = domain.find_next(p)) {
    simplices.insert(support(table[p]));
  }
  std::set<Simplex> closed = simplices;
  for (const auto& s : simplices) {
    for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
      Simplex image;
      bool ok = true;
      for (auto v : s) {
        auto j = action[static_cast<std::size_t>(v) * w.size() + static_cast<std::size_t>(h)];
        if (j < 0) {
          ok = false;
          break;
        }
        image.push_back(j);
      }
      if (!ok) continue;
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) == image.end()) closed.insert(image);
    }
  }
  SimplicialComplex k(member_labels(m), {closed.begin(), closed.end()});
  std::vector<Vertex> vertex_action(w.size() * m, -1);
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t h = 0; h < w.size(); ++h) vertex_action[h * m + v] = action[v * w.size() + h];
  }
  k.set_action(cover.ground->window(), std::move(vertex_action));
  return k;
}

Rational measure_antidiagonal(const GroundSet& ground, const Subset& domain,
                              const std::function<const L1Point&(std::size_t)>& value, const AdbEngine& engine) {
  const auto& w = *ground.window();
  const auto F = f_maps(engine.action());
  Rational best = 0;
  for (auto p = domain.find_first(); p != Subset::npos; p = domain.find_next(p)) {
    const Index g = ground.group_part(p);
    const Point x = ground.point_part(p);
    for (auto s : engine.action().S) {
      auto gs = w.multiply(g, w.inverse(s));
      if (!gs) continue;
      for (const auto& f : F.at(s)) {
        auto q = ground.index(*gs, f[static_cast<std::size_t>(x)]);
        if (!domain.test(q)) continue;
        best = std::max(best, l1_distance(value(p), value(q)));
      }
    }
  }
  return best;
}

Subset inner_domain(const GroundSet& ground, const Rational& reach) {
  Subset domain = ground.empty();
  for (auto g : ground.window()->inner_window(reach)) {
    for (std::size_t x = 0; x < ground.n_points(); ++x) domain.set(ground.index(g, static_cast<Point>(x)));
  }
  return domain;
}

}  // namespace

Rational antidiagonal_constant(const EquivariantMap& phi, const AdbEngine& engine) {
  return measure_antidiagonal(*phi.ground, phi.domain, [&](std::size_t p) -> const L1Point& { return phi.table[p]; },
                              engine);
}

DefectReport equivariance_defect(const AlmostEquivariantMap& psi, const AdbEngine& engine) {
  const auto F = f_maps(engine.action());
  DefectReport report;
  for (std::size_t x = 0; x < psi.n_points; ++x) {
    for (auto s : engine.action().S) {
      ++report.candidates;
      auto moved = psi.complex.act(s, psi.table[x]);
      if (!moved) continue;
      ++report.checked;
      for (const auto& f : F.at(s)) {
        report.value = std::max(report.value, l1_distance(psi.table[static_cast<std::size_t>(f[x])], *moved));
      }
    }
  }
  return report;
}

EquivarianceReport check_equivariance(const EquivariantMap& phi) {
  EquivarianceReport report;
  const auto& ground = *phi.ground;
  const auto& w = *ground.window();
  if (!phi.complex.has_action()) return report;
  for (auto p = phi.domain.find_first(); p != Subset::npos; p = phi.domain.find_next(p)) {
    const Index g = ground.group_part(p);
    const Point x = ground.point_part(p);
    for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
      auto hg = w.multiply(h, g);
      if (!hg) continue;
      auto q = ground.index(*hg, x);
      if (!phi.domain.test(q)) continue;
      auto moved = phi.complex.act(h, phi.table[p]);
      if (!moved) continue;
      ++report.checked;
      if (*moved != phi.table[q]) {
        report.exact = false;
        if (!report.witness) report.witness = p;
      }
    }
  }
  return report;
}

DomainShape domain_shape(const EquivariantMap& phi) {
  const auto& ground = *phi.ground;
  const auto& w = *ground.window();
  DomainShape shape;
  for (auto p = phi.domain.find_first(); p != Subset::npos; p = phi.domain.find_next(p)) {
    shape.radius = std::max(shape.radius, w.length(ground.group_part(p)));
  }
  if (shape.radius < 0) return shape;
  shape.full_ball = true;
  for (std::size_t p = 0; p < ground.size() && shape.full_ball; ++p) {
    bool inside = w.length(ground.group_part(p)) <= shape.radius;
    if (inside != phi.domain.test(p)) shape.full_ball = false;
  }
  return shape;
}

EquivariantMap cover_to_map(const CoverFamily& cover, const AdbEngine& engine, int k) {
  require_nonempty(cover);
  if (k < 1) fail(ErrorKind::InvalidArgument, "k must be >= 1");
  auto longness = n_long_check(cover, engine, k);
  if (!longness.pass) {
    fail(ErrorKind::Precondition,
         "cover is not " + std::to_string(k) + "-long at " + cover.ground->format(*longness.witness));
  }
  const auto& ground = *cover.ground;
  EquivariantMap phi;
  phi.ground = cover.ground;
  phi.dimension = family_dimension(cover);
  phi.domain = inner_domain(ground, Rational(k * engine.action().step_length() + 1));
  phi.table.assign(ground.size(), {});
  const auto members_at = membership(cover);

  for (auto p = phi.domain.find_first(); p != Subset::npos; p = phi.domain.find_next(p)) {
    std::vector<std::uint32_t> alive = members_at[p];
    std::vector<int> level(alive.size(), 0);
    Subset seed = ground.empty();
    seed.set(p);
    engine.expand(seed, k, [&](int r, const Subset& set) {
      if (r == 0) return true;
      bool any = false;
      for (std::size_t i = 0; i < alive.size(); ++i) {
        if (level[i] == r - 1 && set.is_subset_of(cover.members[alive[i]])) {
          level[i] = r;
          any = true;
        }
      }
      return any;
    });
    L1Point raw;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (level[i] > 0) raw[static_cast<Vertex>(alive[i])] = Rational(level[i]);
    }
    if (raw.empty()) fail(ErrorKind::Precondition, "zero-mass point at " + ground.format(p));
    phi.table[p] = normalized(raw);
  }
  phi.complex = nerve_with_action(cover, phi.table, phi.domain);
  phi.measured_constant = antidiagonal_constant(phi, engine);
  phi.certified_bound = Rational(3 * (phi.dimension + 1), k + 1);
  return phi;
}

std::optional<int> admissible_r(const Rational& constant, int n, int cap) {
  if (constant == 0) return cap;
  Rational limit = Rational(1) / (Rational(n + 1) * constant);  // r + 1 <= limit
  std::int64_t r = floor(limit) - 1;
  if (r < 0) return std::nullopt;
  return static_cast<int>(std::min<std::int64_t>(r, cap));
}

namespace {

struct SubdividedMap {
  Subdivision sd;
  std::vector<L1Point> coords;
  Rational constant = 0;
};

SubdividedMap subdivide_map(const EquivariantMap& phi, const AdbEngine& engine) {
  const auto& ground = *phi.ground;
  SubdividedMap out{barycentric_subdivision(phi.complex), std::vector<L1Point>(ground.size()), 0};
  for (auto p = phi.domain.find_first(); p != Subset::npos; p = phi.domain.find_next(p)) {
    out.coords[p] = subdivision_coordinates(out.sd, phi.table[p]);
  }
  out.constant = measure_antidiagonal(ground, phi.domain,
                                      [&](std::size_t p) -> const L1Point& { return out.coords[p]; }, engine);
  return out;
}

}  // namespace

Rational subdivision_constant(const EquivariantMap& phi, const AdbEngine& engine) {
  return subdivide_map(phi, engine).constant;
}

DisjointFamilies map_to_disjoint_families(const EquivariantMap& phi, const AdbEngine& engine, int n, int r) {
  if (n < 0 || r < 0) fail(ErrorKind::InvalidArgument, "n and r must be >= 0");
  if (phi.complex.dimension() > n) {
    fail(ErrorKind::Precondition, "map lands in a complex of dimension " + std::to_string(phi.complex.dimension()) +
                                      " > n = " + std::to_string(n));
  }
  DisjointFamilies out;
  out.k_constant = phi.measured_constant;
  out.threshold = Rational(1) / Rational((n + 1) * (r + 1));
  const auto& ground = *phi.ground;
  auto [sd, coords, sk_constant] = subdivide_map(phi, engine);
  out.sk_constant = sk_constant;
  if (out.sk_constant > out.threshold) {
    fail(ErrorKind::Precondition, "constant into the subdivision " + to_string(out.sk_constant) +
                                      " exceeds 1/((n+1)(r+1)) = " + to_string(out.threshold));
  }

  std::vector<Subset> star(sd.complex.n_vertices(), ground.empty());
  for (auto p = phi.domain.find_first(); p != Subset::npos; p = phi.domain.find_next(p)) {
    for (const auto& [y, c] : coords[p]) star[static_cast<std::size_t>(y)].set(p);
  }
  out.families.resize(static_cast<std::size_t>(n + 1));
  out.united.ground = phi.ground;
  for (auto& f : out.families) f.ground = phi.ground;
  for (std::size_t y = 0; y < star.size(); ++y) {
    if (star[y].none()) continue;
    auto grade = static_cast<std::size_t>(sd.grade[y]);
    out.families[grade - 1].members.push_back(star[y]);
    out.united.members.push_back(star[y]);
  }
  for (const auto& f : out.families) {
    for (std::size_t i = 0; i < f.members.size() && out.disjoint; ++i) {
      for (std::size_t j = i + 1; j < f.members.size(); ++j) {
        if (f.members[i].intersects(f.members[j])) {
          out.disjoint = false;
          break;
        }
      }
    }
  }
  auto shape = domain_shape(phi);
  if (!shape.full_ball) fail(ErrorKind::Precondition, "map domain is not a full ball of the window");
  const int margin = ground.window()->radius() - shape.radius;
  out.longness = n_long_check(out.united, engine, r, margin);
  return out;
}

AlmostEquivariantMap phi_to_psi(const EquivariantMap& phi, const AdbEngine& engine) {
  const auto& ground = *phi.ground;
  AlmostEquivariantMap psi;
  psi.n_points = ground.n_points();
  psi.complex = phi.complex;
  for (std::size_t x = 0; x < ground.n_points(); ++x) {
    auto p = ground.index(ground.window()->identity(), static_cast<Point>(x));
    if (!phi.domain.test(p)) fail(ErrorKind::InsufficientDomain, "identity fiber is outside the map domain");
    psi.table.push_back(phi.table[p]);
  }
  const auto defect = equivariance_defect(psi, engine);
  psi.measured_defect = defect.value;
  psi.defect_coverage = defect.coverage();
  return psi;
}

EquivariantMap psi_to_phi(const AlmostEquivariantMap& psi, const AdbEngine& engine) {
  if (!psi.complex.has_action()) fail(ErrorKind::InsufficientDomain, "complex carries no group action");
  EquivariantMap phi;
  phi.ground = engine.ground_ptr();
  const auto& ground = *phi.ground;
  const auto& w = *ground.window();
  phi.complex = psi.complex;
  phi.dimension = psi.complex.dimension();
  phi.domain = ground.empty();
  phi.table.assign(ground.size(), {});
  for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
    std::vector<L1Point> row;
    for (std::size_t x = 0; x < psi.n_points; ++x) {
      auto moved = psi.complex.act(g, psi.table[x]);
      if (!moved) break;
      row.push_back(std::move(*moved));
    }
    if (row.size() != psi.n_points) continue;
    for (std::size_t x = 0; x < psi.n_points; ++x) {
      auto p = ground.index(g, static_cast<Point>(x));
      phi.domain.set(p);
      phi.table[p] = std::move(row[x]);
    }
  }
  if (phi.domain.none()) fail(ErrorKind::InsufficientDomain, "no window element acts on the supports of psi");
  phi.measured_constant = antidiagonal_constant(phi, engine);
  return phi;
}

MultiplicityCover cover_to_multiplicity_cover(const CoverFamily& cover, const Rational& d) {
  require_nonempty(cover);
  auto leb = lebesgue_check(cover, d);
  if (!leb.pass) {
    fail(ErrorKind::Precondition, "cover has no G-Lebesgue number " + to_string(d) + ", witness " +
                                      cover.ground->format(*leb.witness));
  }
  const auto& ground = *cover.ground;
  MultiplicityCover out;
  out.source_dimension = family_dimension(cover);
  out.family.ground = cover.ground;
  // Shrinking is exact only on the inner window, so stabilizers are compared there.
  const Subset inner = inner_domain(ground, d);
  for (const auto& u : cover.members) {
    Subset shrunk = shrink(ground, u, d);
    if (window_stabilizer(ground, shrunk, inner) != window_stabilizer(ground, u, inner)) out.stabilizers_match = false;
    out.family.members.push_back(std::move(shrunk));
  }
  out.multiplicity = g_multiplicity(out.family, d);
  out.covers_inner = out.family.covers(inner_domain(ground, d));
  return out;
}

LebesgueCover multiplicity_to_lebesgue_cover(const CoverFamily& family, const Rational& alpha) {
  require_nonempty(family);
  const auto& ground = *family.ground;
  Subset inner = inner_domain(ground, alpha);
  if (!family.covers(inner)) fail(ErrorKind::Precondition, "family does not cover the inner window");
  LebesgueCover out;
  out.multiplicity = g_multiplicity(family, alpha).value;
  out.stabilizer_index_bound = out.multiplicity;
  out.family.ground = family.ground;
  for (const auto& v : family.members) out.family.members.push_back(pad(ground, v, alpha));
  out.dimension = family_dimension(out.family);
  CoverFamily restricted;
  restricted.ground = family.ground;
  for (const auto& u : out.family.members) restricted.members.push_back(u & inner);
  out.inner_dimension = family_dimension(restricted);
  out.lebesgue = lebesgue_check(out.family, alpha);
  return out;
}

PartitionMap partition_lU(const CoverFamily& cover, int k, const std::vector<std::vector<Rational>>& weights) {
  require_nonempty(cover);
  if (k < 1) fail(ErrorKind::InvalidArgument, "k must be >= 1");
  const auto& ground = *cover.ground;
  if (ground.mode() == ActionMode::PointsOnly) fail(ErrorKind::Precondition, "partition_lU needs Window x Points");
  const auto& w = *ground.window();
  const Rational kr(k);
  auto leb = lebesgue_check(cover, kr);
  if (!leb.pass) {
    fail(ErrorKind::Precondition, "cover has no G-Lebesgue number " + std::to_string(k) + ", witness " +
                                      ground.format(*leb.witness));
  }
  const std::size_t m = cover.members.size();
  std::vector<Subset> slices;
  for (const auto& u : cover.members) slices.push_back(shrink(ground, u, kr));
  const auto action = member_action(cover);
  const Index one = w.identity();

  if (!weights.empty()) {
    if (weights.size() != m) fail(ErrorKind::InvalidArgument, "one weight row per member expected");
    for (std::size_t x = 0; x < ground.n_points(); ++x) {
      Rational sum = 0;
      for (std::size_t u = 0; u < m; ++u) {
        const auto& wu = weights[u].at(x);
        if (wu < 0) fail(ErrorKind::Precondition, "negative weight");
        if (wu > 0 && !slices[u].test(ground.index(one, static_cast<Point>(x)))) {
          fail(ErrorKind::Precondition, "weights not subordinate to B(U,-k) at member " + std::to_string(u) +
                                            ", point " + std::to_string(x));
        }
        sum += wu;
      }
      if (sum != 1) fail(ErrorKind::Precondition, "weights do not sum to 1 at point " + std::to_string(x));
    }
  }

  // w_U(h, x): the weight of the slice of h^-1 U at h^-1 x, in intrinsic form.
  auto weight = [&](std::size_t u, Index h, Point x) -> Rational {
    const auto p = ground.index(h, x);
    if (weights.empty()) {
      if (!slices[u].test(p)) return 0;
      std::int64_t count = 0;
      for (const auto& s : slices) count += s.test(p) ? 1 : 0;
      return Rational(1, count);
    }
    const Index hinv = w.inverse(h);
    auto j = action[u * w.size() + static_cast<std::size_t>(hinv)];
    if (j < 0) return 0;
    Point y = x;
    if (ground.mode() == ActionMode::Diagonal) {
      y = ground.action()->act(hinv, x);
      if (y == kUndefined) return 0;
    }
    return weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(y)];
  };

  PartitionMap out;
  auto& phi = out.map;
  phi.ground = cover.ground;
  phi.dimension = family_dimension(cover);
  phi.domain = inner_domain(ground, Rational(2 * k - 1));
  phi.table.assign(ground.size(), {});
  out.l.assign(ground.size(), {});
  out.bound = Rational(3 * (phi.dimension + 1) * (phi.dimension + 1), k);

  const std::size_t prefix = w.ball_prefix(kr);
  const auto members_at = membership(cover);
  for (auto p = phi.domain.find_first(); p != Subset::npos; p = phi.domain.find_next(p)) {
    const Index g = ground.group_part(p);
    const Point x = ground.point_part(p);
    std::map<std::uint32_t, Rational> best;
    for (std::size_t i = 0; i < prefix; ++i) {
      auto h = w.multiply(g, static_cast<Index>(i));
      if (!h) continue;
      const Rational dist(w.length(static_cast<Index>(i)));
      for (auto u : members_at[ground.index(*h, x)]) {
        Rational value = kr * weight(u, *h, x) - dist;
        if (value <= 0) continue;
        auto [it, inserted] = best.emplace(u, value);
        if (!inserted) it->second = std::max(it->second, value);
      }
    }
    L1Point raw;
    for (const auto& [u, value] : best) {
      out.l[p].emplace_back(u, value);
      raw[static_cast<Vertex>(u)] = value;
      if (!cover.members[u].test(p)) out.support = false;
    }
    if (raw.empty()) fail(ErrorKind::Precondition, "zero-mass point at " + ground.format(p));
    phi.table[p] = normalized(raw);
  }
  phi.complex = nerve_with_action(cover, phi.table, phi.domain);

  auto l_of = [&](std::size_t p, std::uint32_t u) -> Rational {
    for (const auto& [v, value] : out.l[p]) {
      if (v == u) return value;
    }
    return 0;
  };
  for (auto p = phi.domain.find_first(); p != Subset::npos; p = phi.domain.find_next(p)) {
    const Index g = ground.group_part(p);
    const Point x = ground.point_part(p);
    for (auto s : w.generators()) {
      auto gs = w.multiply(g, s);
      if (!gs) continue;
      auto q = ground.index(*gs, x);
      if (!phi.domain.test(q)) continue;
      phi.measured_constant = std::max(phi.measured_constant, l1_distance(phi.table[p], phi.table[q]));
      std::set<std::uint32_t> us;
      for (const auto& [u, v] : out.l[p]) us.insert(u);
      for (const auto& [u, v] : out.l[q]) us.insert(u);
      for (auto u : us) {
        if (abs(l_of(p, u) - l_of(q, u)) > 1) out.lipschitz = false;
      }
    }
    for (Index j = 0; j < static_cast<Index>(w.size()); ++j) {
      auto q = ground.act(j, p);
      if (!q || !phi.domain.test(*q)) continue;
      for (std::uint32_t u = 0; u < m; ++u) {
        auto ju = action[u * w.size() + static_cast<std::size_t>(j)];
        if (ju < 0) continue;
        ++out.invariance_checked;
        if (l_of(p, u) != l_of(*q, static_cast<std::uint32_t>(ju))) out.invariant = false;
      }
    }
  }
  return out;
}

ZeroDimReport zero_dim_structure_check(const CoverFamily& cover, const Rational& alpha) {
  require_nonempty(cover);
  if (alpha <= 1) fail(ErrorKind::Precondition, "alpha must exceed 1");
  if (family_dimension(cover) != 0) fail(ErrorKind::Precondition, "cover is not zero-dimensional");
  auto leb = lebesgue_check(cover, alpha);
  if (!leb.pass) {
    fail(ErrorKind::Precondition, "cover has no G-Lebesgue number " + to_string(alpha) + ", witness " +
                                      cover.ground->format(*leb.witness));
  }
  const auto& ground = *cover.ground;
  const auto& w = *ground.window();
  const auto inner = w.inner_window(alpha);
  ZeroDimReport report;
  report.inner_size = inner.size();
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    const auto& u = cover.members[i];
    std::vector<Point> fiber;
    for (std::size_t xi = 0; xi < ground.n_points(); ++xi) {
      const auto x = static_cast<Point>(xi);
      std::size_t hits = 0;
      std::optional<std::size_t> miss;
      for (auto g : inner) {
        if (u.test(ground.index(g, x))) {
          ++hits;
        } else if (!miss) {
          miss = ground.index(g, x);
        }
      }
      if (hits == inner.size()) {
        fiber.push_back(x);
      } else if (hits > 0 && report.product) {
        report.product = false;
        report.bad_member = i;
        report.witness = miss;
      }
    }
    std::set<std::vector<Point>> orbit{fiber};
    if (ground.mode() == ActionMode::Diagonal) {
      for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
        std::vector<Point> image;
        for (auto x : fiber) {
          Point hx = ground.action()->act(h, x);
          if (hx == kUndefined) break;
          image.push_back(hx);
        }
        if (image.size() != fiber.size()) continue;
        std::sort(image.begin(), image.end());
        orbit.insert(std::move(image));
      }
    }
    report.orbit_sizes.push_back(orbit.size());
    report.fibers.push_back(std::move(fiber));
  }
  return report;
}

AbelianReport abelian_obstruction_check(const CoverFamily& cover, const Rational& alpha, const std::vector<Index>& z,
                                        Point x, const FamilyPredicate& family) {
  require_nonempty(cover);
  const auto& ground = *cover.ground;
  const auto& w = *ground.window();
  if (ground.mode() == ActionMode::PointsOnly) fail(ErrorKind::Precondition, "needs Window x Points");
  for (auto zi : z) {
    if (Rational(w.length(zi)) >= alpha) fail(ErrorKind::Precondition, w.format(zi) + " lies outside B(1, alpha)");
    if (ground.mode() == ActionMode::Diagonal && ground.action()->act(zi, x) != x) {
      fail(ErrorKind::Precondition, w.format(zi) + " does not fix point " + std::to_string(x));
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (!w.group().commute(w.word(z[i]), w.word(z[j]))) {
        fail(ErrorKind::Precondition, w.format(z[i]) + " and " + w.format(z[j]) + " do not commute");
      }
    }
  }
  const auto ball = w.ball(w.identity(), alpha).elements;
  Subset target = ground.empty();
  for (auto h : ball) target.set(ground.index(h, x));
  AbelianReport report;
  bool found = false;
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    if (target.is_subset_of(cover.members[i])) {
      report.member = i;
      found = true;
      break;
    }
  }
  if (!found) fail(ErrorKind::Precondition, "no member contains B(1, alpha) x {x}");
  const auto& u = cover.members[report.member];
  std::vector<Word> gens;
  for (auto zi : z) {
    report.stabilizes.push_back(compare_translate(ground, u, zi, u).relation == TranslateRelation::Equal);
    gens.push_back(w.word(zi));
  }
  report.in_family = family.contains(w.group(), gens);
  report.violation = !report.in_family.holds;
  return report;
}

}  // namespace ccw

#include "ccw/homotopy.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace ccw {

int HomotopyAction::step_length() const {
  int best = 0;
  for (auto s : S) best = std::max(best, window->length(s));
  return best;
}

namespace {

PointMap compose(const PointMap& f, const PointMap& g) {  // f o g
  PointMap out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = f[static_cast<std::size_t>(g[x])];
  return out;
}

PointMap identity_map(std::size_t n) {
  PointMap out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = static_cast<Point>(x);
  return out;
}

std::string where(const GroupWindow& w, Index g, Index h) {
  return "(" + w.format(g) + ", " + w.format(h) + ")";
}

}  // namespace

HomotopyVerdict validate_homotopy_action(const HomotopyAction& ha) {
  HomotopyVerdict v;
  auto bad = [&](std::string msg) {
    v.ok = false;
    v.violation = std::move(msg);
    return v;
  };
  if (!ha.window) return bad("missing window");
  const auto& w = *ha.window;
  const std::size_t n = ha.n_points;
  if (!std::is_sorted(ha.S.begin(), ha.S.end()) ||
      std::adjacent_find(ha.S.begin(), ha.S.end()) != ha.S.end()) {
    return bad("S must be sorted without repetition");
  }
  auto in_s = [&](Index g) { return std::binary_search(ha.S.begin(), ha.S.end(), g); };
  if (!in_s(w.identity())) return bad("S does not contain the identity");
  for (auto s : ha.S) {
    if (!in_s(w.inverse(s))) return bad("S is not symmetric at " + w.format(s));
  }
  if (ha.time_grid.size() < 2 || ha.time_grid.front() != 0 || ha.time_grid.back() != 1 ||
      !std::is_sorted(ha.time_grid.begin(), ha.time_grid.end()) ||
      std::adjacent_find(ha.time_grid.begin(), ha.time_grid.end()) != ha.time_grid.end()) {
    return bad("time grid must be strictly increasing from 0 to 1");
  }
  auto valid_map = [&](const PointMap& f) {
    return f.size() == n && std::all_of(f.begin(), f.end(), [&](Point p) { return p >= 0 && p < static_cast<Point>(n); });
  };
  for (auto s : ha.S) {
    auto it = ha.phi.find(s);
    if (it == ha.phi.end()) return bad("missing phi for " + w.format(s));
    if (!valid_map(it->second)) return bad("phi for " + w.format(s) + " is not a total map");
  }
  if (ha.phi.size() != ha.S.size()) return bad("phi defined outside S");
  if (ha.phi.at(w.identity()) != identity_map(n)) return bad("phi of the identity is not the identity map");

  std::size_t expected_pairs = 0;
  for (auto g : ha.S) {
    for (auto h : ha.S) {
      auto gh = w.multiply(g, h);
      if (!gh || !in_s(*gh)) continue;
      ++expected_pairs;
      auto it = ha.H.find({g, h});
      if (it == ha.H.end()) return bad("missing homotopy for " + where(w, g, h));
      const auto& samples = it->second;
      if (samples.size() != ha.time_grid.size()) return bad("homotopy " + where(w, g, h) + " has wrong sample count");
      for (const auto& f : samples) {
        if (!valid_map(f)) return bad("homotopy " + where(w, g, h) + " contains a non-total map");
      }
      const PointMap start = compose(ha.phi.at(g), ha.phi.at(h));
      const PointMap& end = ha.phi.at(*gh);
      for (std::size_t x = 0; x < n; ++x) {
        if (samples.front()[x] != start[x]) {
          return bad("H^0 differs from phi_g o phi_h at " + where(w, g, h) + ", t=0, x=" + std::to_string(x));
        }
        if (samples.back()[x] != end[x]) {
          return bad("H^1 differs from phi_gh at " + where(w, g, h) + ", t=1, x=" + std::to_string(x));
        }
      }
      if (g == w.identity() && h == w.identity()) {
        for (std::size_t t = 0; t < samples.size(); ++t) {
          if (samples[t] != identity_map(n)) {
            return bad("H_{1,1} is not the identity at t=" + to_string(ha.time_grid[t]));
          }
        }
      }
    }
  }
  if (expected_pairs != ha.H.size()) return bad("homotopies given for pairs with gh outside S");
  return v;
}

std::map<Index, std::vector<PointMap>> f_maps(const HomotopyAction& ha) {
  std::map<Index, std::set<PointMap>> sets;
  for (auto s : ha.S) sets[s];
  for (const auto& [pair, samples] : ha.H) {
    auto g = ha.window->multiply(pair.first, pair.second);
    if (!g) continue;
    for (const auto& f : samples) sets[*g].insert(f);
  }
  std::map<Index, std::vector<PointMap>> out;
  for (auto& [g, s] : sets) out[g].assign(s.begin(), s.end());
  return out;
}

// ---------------------------------------------------------------- ADB

AdbEngine::AdbEngine(const HomotopyAction& ha) : ha_(ha) {
  auto verdict = validate_homotopy_action(ha_);
  if (!verdict.ok) fail(ErrorKind::Precondition, "invalid homotopy action: " + verdict.violation);
  ground_ = std::make_shared<GroundSet>(ha_.window, ha_.n_points, ActionMode::Translation);
  const auto F = f_maps(ha_);
  const auto& w = *ha_.window;
  targets_.resize(ha_.S.size());
  for (std::size_t i = 0; i < ha_.S.size(); ++i) {
    const Index s = ha_.S[i];
    std::vector<std::set<Point>> reach(ha_.n_points);
    for (const auto& f : F.at(w.inverse(s))) {
      for (std::size_t x = 0; x < ha_.n_points; ++x) reach[x].insert(f[x]);
    }
    for (const auto& f : F.at(s)) {
      for (std::size_t y = 0; y < ha_.n_points; ++y) reach[static_cast<std::size_t>(f[y])].insert(static_cast<Point>(y));
    }
    targets_[i].resize(ha_.n_points);
    for (std::size_t x = 0; x < ha_.n_points; ++x) targets_[i][x].assign(reach[x].begin(), reach[x].end());
  }
}

bool AdbEngine::step(const Subset& frontier, Subset& into, Subset& next) const {
  const auto& w = *ha_.window;
  bool clipped = false;
  for (auto p = frontier.find_first(); p != Subset::npos; p = frontier.find_next(p)) {
    const Index g = ground_->group_part(p);
    const Point x = ground_->point_part(p);
    for (std::size_t i = 0; i < ha_.S.size(); ++i) {
      auto gs = w.multiply(g, ha_.S[i]);
      if (!gs) {
        clipped = true;
        continue;
      }
      for (auto y : targets_[i][static_cast<std::size_t>(x)]) {
        auto q = ground_->index(*gs, y);
        if (!into.test(q)) {
          into.set(q);
          next.set(q);
        }
      }
    }
  }
  return clipped;
}

AdbResult AdbEngine::adb(const Subset& seed, int n) const {
  if (n < 0) fail(ErrorKind::InvalidArgument, "ADB iteration count must be >= 0");
  AdbResult result;
  result.clipped = expand(seed, n, [&](int r, const Subset& s) {
    if (r == n) result.set = s;
    return true;
  });
  return result;
}

AdbResult AdbEngine::adb_point(Index g, Point x, int n) const {
  Subset seed = ground_->empty();
  seed.set(ground_->index(g, x));
  return adb(seed, n);
}

LongnessResult n_long_check(const CoverFamily& cover, const AdbEngine& engine, int n, int margin) {
  const auto& ground = *cover.ground;
  if (ground.mode() != ActionMode::Translation) {
    fail(ErrorKind::Precondition, "longness is checked on covers with the translation action");
  }
  if (ground.window() != engine.ground().window() || ground.n_points() != engine.ground().n_points()) {
    fail(ErrorKind::Precondition, "cover and homotopy action live on different ground sets");
  }
  const auto& w = *ground.window();
  const Rational reach(n * engine.action().step_length() + 1 + margin);
  auto seeds = w.inner_window(reach);
  if (seeds.empty()) fail(ErrorKind::EmptyInnerWindow, "no seeds with unclipped ADB^" + std::to_string(n));
  const auto members_at = membership(cover);
  LongnessResult result;
  for (auto g : seeds) {
    for (std::size_t xi = 0; xi < ground.n_points(); ++xi) {
      const auto x = static_cast<Point>(xi);
      ++result.seeds;
      auto ball = engine.adb_point(g, x, n);
      if (ball.clipped) result.inconclusive = true;
      bool found = false;
      for (auto m : members_at[ground.index(g, x)]) {
        if (ball.set.is_subset_of(cover.members[m])) {
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

std::vector<Index> standard_generating_set(const GroupWindow& window) {
  std::vector<Index> S{window.identity()};
  for (auto s : window.generators()) S.push_back(s);
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  return S;
}

HomotopyAction genuine_to_homotopy(const PartialAction& action, std::vector<Index> S) {
  const auto& w = *action.window();
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  HomotopyAction ha;
  ha.window = action.window();
  ha.n_points = action.n_points();
  ha.S = S;
  ha.time_grid = {Rational(0), Rational(1)};
  for (auto s : S) {
    PointMap f(ha.n_points);
    for (std::size_t x = 0; x < ha.n_points; ++x) {
      f[x] = action.act(s, static_cast<Point>(x));
      if (f[x] == kUndefined) {
        fail(ErrorKind::InsufficientDomain,
             "action of " + w.format(s) + " is undefined at point " + std::to_string(x));
      }
    }
    ha.phi[s] = std::move(f);
  }
  for (auto g : S) {
    for (auto h : S) {
      auto gh = w.multiply(g, h);
      if (!gh || !std::binary_search(S.begin(), S.end(), *gh)) continue;
      ha.H[{g, h}] = {compose(ha.phi.at(g), ha.phi.at(h)), ha.phi.at(*gh)};
    }
  }
  return ha;
}

HomotopyAction make_perturbed_interval_homotopy(const WindowPtr& z_window, int m, std::uint64_t seed) {
  const auto* z = dynamic_cast<const FreeAbelianGroup*>(&z_window->group());
  if (!z || z->rank() != 1) fail(ErrorKind::InvalidArgument, "interval homotopy needs a window of Z");
  if (z_window->radius() < 1) fail(ErrorKind::InvalidArgument, "interval homotopy needs a window of radius >= 1");
  if (m < 1) fail(ErrorKind::InvalidArgument, "interval radius must be >= 1");
  const std::size_t n = static_cast<std::size_t>(2 * m + 3);
  const Index zero = z_window->identity();
  const Index plus = *z_window->find(Word{1});
  const Index minus = *z_window->find(Word{-1});

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution sticky(0.25);
  std::bernoulli_distribution coin(0.5);
  // Points: 0 = -inf, 1..2m+1 = -m..m, 2m+2 = +inf.
  auto shifted = [&](int direction) {
    PointMap f(n);
    f.front() = 0;
    f.back() = static_cast<Point>(n - 1);
    for (std::size_t p = 1; p + 1 < n; ++p) {
      if (sticky(rng)) {
        f[p] = static_cast<Point>(p);
        continue;
      }
      auto q = static_cast<Point>(p) + direction;
      f[p] = std::clamp<Point>(q, 1, static_cast<Point>(n - 2));
    }
    return f;
  };

  HomotopyAction ha;
  ha.window = z_window;
  ha.n_points = n;
  ha.S = {zero, plus, minus};
  std::sort(ha.S.begin(), ha.S.end());
  ha.time_grid = {Rational(0), Rational(1, 2), Rational(1)};
  ha.phi[zero] = identity_map(n);
  ha.phi[plus] = shifted(+1);
  ha.phi[minus] = shifted(-1);
  for (auto s : ha.S) {
    ha.H[{zero, s}] = {ha.phi[s], ha.phi[s], ha.phi[s]};
    if (s != zero) ha.H[{s, zero}] = {ha.phi[s], ha.phi[s], ha.phi[s]};
  }
  for (auto [g, h] : {std::pair{plus, minus}, std::pair{minus, plus}}) {
    PointMap start = compose(ha.phi[g], ha.phi[h]);
    PointMap end = identity_map(n);
    PointMap middle(n);
    for (std::size_t x = 0; x < n; ++x) middle[x] = coin(rng) ? start[x] : end[x];
    ha.H[{g, h}] = {start, middle, end};
  }
  return ha;
}

ModulusProbe adb_modulus_probe(const AdbEngine& engine, const FiniteMetricSpace& space, const Subset& a, int n,
                               const Rational& eps) {
  const auto& ground = engine.ground();
  const auto& w = *ground.window();
  if (space.size() != ground.n_points()) fail(ErrorKind::InvalidArgument, "space does not match the homotopy action");
  if (eps <= 0) fail(ErrorKind::InvalidArgument, "eps must be positive");
  if (a.none()) fail(ErrorKind::InvalidArgument, "probe set must be nonempty");

  const std::size_t ws = w.size();
  std::vector<int> dg(ws * ws);
  for (std::size_t g = 0; g < ws; ++g) {
    for (std::size_t h = 0; h < ws; ++h) dg[g * ws + h] = w.distance(static_cast<Index>(g), static_cast<Index>(h));
  }
  auto dist = [&](std::size_t p, std::size_t q) {
    Rational dgv(dg[static_cast<std::size_t>(ground.group_part(p)) * ws + static_cast<std::size_t>(ground.group_part(q))]);
    const Rational& dx = space.distance(ground.point_part(p), ground.point_part(q));
    return std::max(dgv, dx);
  };
  auto dist_to = [&](std::size_t p, const Subset& set) {
    std::optional<Rational> best;
    for (auto q = set.find_first(); q != Subset::npos; q = set.find_next(q)) {
      Rational d = dist(p, q);
      if (!best || d < *best) best = d;
    }
    return *best;
  };

  ModulusProbe probe;
  auto base = engine.adb(a, n);
  probe.clipped = base.clipped;
  Subset allowed = ground.empty();
  for (std::size_t p = 0; p < ground.size(); ++p) {
    if (dist_to(p, base.set) < eps) allowed.set(p);
  }

  std::vector<std::pair<Rational, std::size_t>> order;
  Rational diameter = 0;
  for (std::size_t p = 0; p < ground.size(); ++p) {
    order.emplace_back(dist_to(p, a), p);
    for (std::size_t q = p + 1; q < ground.size(); ++q) diameter = std::max(diameter, dist(p, q));
  }
  std::sort(order.begin(), order.end());
  for (const auto& [d, p] : order) {
    if (d == 0) continue;
    auto image = engine.adb_point(ground.group_part(p), ground.point_part(p), n);
    probe.clipped = probe.clipped || image.clipped;
    if (!image.set.is_subset_of(allowed)) {
      probe.delta = d;
      probe.limiting_point = p;
      return probe;
    }
  }
  probe.delta = diameter;
  return probe;
}

BridgeReport adb_bridge_check(const PartialAction& action, int alpha) {
  if (alpha < 1) fail(ErrorKind::InvalidArgument, "alpha must be >= 1");
  const auto& w = *action.window();
  AdbEngine engine(genuine_to_homotopy(action, standard_generating_set(w)));
  const auto& ground = engine.ground();
  BridgeReport report;
  for (auto g : w.inner_window(Rational(alpha))) {
    for (std::size_t xi = 0; xi < action.n_points(); ++xi) {
      const auto x = static_cast<Point>(xi);
      Point y = action.act(w.inverse(g), x);
      if (y == kUndefined) fail(ErrorKind::InsufficientDomain, "action is not total");
      Subset expected = ground.empty();
      for (auto h : w.ball(g, Rational(alpha)).elements) {
        Point hx = action.act(w.inverse(h), x);
        if (hx == kUndefined) fail(ErrorKind::InsufficientDomain, "action is not total");
        expected.set(ground.index(h, hx));
      }
      auto got = engine.adb_point(g, y, alpha - 1);
      ++report.checked;
      if (got.set != expected) {
        ++report.mismatches;
        if (!report.first_mismatch) report.first_mismatch = ground.index(g, x);
      }
    }
  }
  return report;
}

}  // namespace ccw

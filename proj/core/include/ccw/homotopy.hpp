#pragma once

#include "ccw/cover.hpp"
#include "ccw/ground.hpp"
#include "ccw/space.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccw {

/// Total self-map of the point set.
using PointMap = std::vector<Point>;

/// Generator maps phi_s (s in S) and time-sampled homotopies H_{g,h} for every
/// pair with gh in S. H[{g,h}][i] is the map at time_grid[i].
struct HomotopyAction {
  WindowPtr window;
  std::size_t n_points = 0;
  std::vector<Index> S;  // sorted window indices, contains the identity
  std::map<Index, PointMap> phi;
  std::map<std::pair<Index, Index>, std::vector<PointMap>> H;
  std::vector<Rational> time_grid;  // ascending, starts at 0, ends at 1

  /// Longest word length among S.
  int step_length() const;
};

struct HomotopyVerdict {
  bool ok = true;
  std::string violation;
};

/// Endpoint laws H^0_{g,h} = phi_g o phi_h, H^1_{g,h} = phi_{gh}, phi_1 = id
/// and H^t_{1,1} = id, plus structural checks (symmetric S, maps total).
HomotopyVerdict validate_homotopy_action(const HomotopyAction& ha);

/// F_g: the distinct sampled maps H^t_{r,s} with rs = g, for every g in S.
std::map<Index, std::vector<PointMap>> f_maps(const HomotopyAction& ha);

struct AdbResult {
  Subset set;
  bool clipped = false;  // some step left the window
};

/// Antidiagonal-ball expansion on Window x Points with translation indexing.
/// One step from (g, x) reaches (gs, y) with y = f(x) for f in F_{s^-1} or
/// x = f(y) for f in F_s.
class AdbEngine {
 public:
  explicit AdbEngine(const HomotopyAction& ha);

  const GroundSet& ground() const { return *ground_; }
  const GroundPtr& ground_ptr() const { return ground_; }
  const HomotopyAction& action() const { return ha_; }

  AdbResult adb(const Subset& seed, int n) const;
  AdbResult adb_point(Index g, Point x, int n) const;

  /// Calls visit(r, set) for r = 0..n with the successive ADB^r of `seed`;
  /// stops early when visit returns false.
  template <class Visit>
  bool expand(const Subset& seed, int n, Visit&& visit) const;

  /// Points reachable from x in one step with generator S[i].
  const std::vector<Point>& targets(std::size_t s_position, Point x) const {
    return targets_[s_position][static_cast<std::size_t>(x)];
  }

 private:
  bool step(const Subset& frontier, Subset& into, Subset& next) const;

  HomotopyAction ha_;
  GroundPtr ground_;
  std::vector<std::vector<std::vector<Point>>> targets_;  // [s][x] -> sorted targets
};

template <class Visit>
bool AdbEngine::expand(const Subset& seed, int n, Visit&& visit) const {
  Subset current = seed;
  Subset frontier = seed;
  bool clipped = false;
  if (!visit(0, current)) return clipped;
  for (int r = 1; r <= n; ++r) {
    Subset next = ground_->empty();
    clipped = step(frontier, current, next) || clipped;
    frontier = std::move(next);
    if (!visit(r, current)) break;
  }
  return clipped;
}

struct LongnessResult {
  bool pass = true;
  bool inconclusive = false;             // some seed expansion was clipped
  std::optional<std::size_t> witness;    // seed (g, x) whose ADB^n fits nowhere
  std::size_t seeds = 0;
};

/// Every ADB^n(g, x) with |g| + n * |S| + 1 + margin <= R + 1 lies in a member.
/// The cover must live on Window x Points with the translation action.
LongnessResult n_long_check(const CoverFamily& cover, const AdbEngine& engine, int n, int margin = 0);

/// Constant homotopies of a genuine action: phi_s = s. and H_{g,h} = phi_{gh}.
/// `S` must be symmetric and contain the identity; the action must be total
/// on S (InsufficientDomain otherwise).
HomotopyAction genuine_to_homotopy(const PartialAction& action, std::vector<Index> S);

/// The identity, the generators and their inverses.
std::vector<Index> standard_generating_set(const GroupWindow& window);

/// Perturbed translation homotopy on the interval model of radius m, for a Z
/// window: phi_{+-1} translate and clamp at -m, m, except that a seeded random
/// set of points sticks; the homotopies H_{1,-1}, H_{-1,1} pass through a
/// seeded mixture of their endpoint maps at t = 1/2.
HomotopyAction make_perturbed_interval_homotopy(const WindowPtr& z_window, int m, std::uint64_t seed);

struct ModulusProbe {
  Rational delta;
  bool clipped = false;
  std::optional<std::size_t> limiting_point;  // first point whose ADB^n leaves the eps-ball
};

/// Largest delta among realized distances of the product metric
/// max(d_G, d_X) with ADB^n(B(A, delta)) inside B(ADB^n(A), eps); balls are open.
ModulusProbe adb_modulus_probe(const AdbEngine& engine, const FiniteMetricSpace& space, const Subset& a, int n,
                               const Rational& eps);

struct BridgeReport {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::optional<std::size_t> first_mismatch;
};

/// For constant homotopies of a total action: ADB^{alpha-1}({rho(g,x)}) against
/// rho(B(g, alpha) x {x}), rho(g, x) = (g, g^-1 x), over the inner window.
BridgeReport adb_bridge_check(const PartialAction& action, int alpha);

}  // namespace ccw

#pragma once

#include "ccw/rational.hpp"
#include "ccw/window.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ccw {

using Point = std::int32_t;
inline constexpr Point kUndefined = -1;

/// Finite metric space with exact rational distances. The metric axioms are
/// verified on construction.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  /// `distances` is row-major n x n.
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<Rational> distances);

  std::size_t size() const { return labels_.size(); }
  const Rational& distance(Point x, Point y) const {
    return dist_[static_cast<std::size_t>(x) * labels_.size() + static_cast<std::size_t>(y)];
  }
  const std::string& label(Point x) const { return labels_[static_cast<std::size_t>(x)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Point> find(const std::string& label) const;

  /// Distinct positive distances, ascending.
  std::vector<Rational> distinct_distances() const;
  Rational diameter() const;
  Rational min_positive_distance() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Rational> dist_;
};

struct ActionReport {
  bool ok = true;
  std::string violation;        // empty when ok
  std::size_t checked = 0;      // triples (g,h,x) where every application was defined
  std::size_t candidates = 0;   // triples with g*h inside the window
};

/// A partial action of a group window on points: table[g][x] is g.x or kUndefined.
class PartialAction {
 public:
  PartialAction() = default;
  PartialAction(WindowPtr window, std::size_t n_points, std::vector<Point> table);

  const WindowPtr& window() const { return window_; }
  std::size_t n_points() const { return n_points_; }
  Point act(Index g, Point x) const {
    return table_[static_cast<std::size_t>(g) * n_points_ + static_cast<std::size_t>(x)];
  }
  bool total_for(Index g) const;
  bool is_total() const;
  const std::vector<Point>& table() const { return table_; }

  /// Identity law everywhere and (gh).x = g.(h.x) on every triple where all
  /// three applications are defined.
  ActionReport validate() const;

  /// d(gx, gy) = d(x, y) wherever both sides are defined.
  bool is_isometric(const FiniteMetricSpace& space) const;

  /// Fraction of (g, x) pairs on which the action is defined.
  Rational coverage() const;

 private:
  WindowPtr window_;
  std::size_t n_points_ = 0;
  std::vector<Point> table_;
};

struct CompactificationModel {
  FiniteMetricSpace space;
  std::vector<char> boundary;  // boundary[x] != 0 iff x lies in the boundary
  PartialAction action;

  bool is_boundary(Point x) const { return boundary[static_cast<std::size_t>(x)] != 0; }
  std::vector<Point> boundary_points() const;
  std::vector<Point> interior_points() const;
  /// Partition-preservation and action validation.
  ActionReport validate() const;
};

/// Integers -R..R with endpoints -inf, +inf, metric |t(x) - t(y)| for the
/// order embedding t(x) = x / (|x| + 1), t(+-inf) = +-1. Z acts by translation
/// wherever the result stays in -R..R and fixes both endpoints.
CompactificationModel make_interval_compactification(const WindowPtr& z_window);

/// Reduced words of F_k up to length D; the length-D words form the boundary.
/// d(x, y) = 2^-lcp(x, y). Interior words are moved by reduced left
/// multiplication when the result stays interior. A boundary word w is moved
/// to the first D letters of reduce(gw) when fewer than D letters cancel and
/// the reduced product still has length >= D, so that the truncation does not
/// depend on letters beyond depth D.
CompactificationModel make_tree_boundary_model(const WindowPtr& free_window, int depth,
                                              std::size_t max_points = kDefaultWindowCap);

/// Total action given by a permutation of points for every generator,
/// extended along shortest words. The caller must supply permutations that
/// satisfy the group relations (automatic for free and free abelian groups
/// when every generator of Z^n gets a commuting permutation).
PartialAction make_permutation_action(const WindowPtr& window, std::size_t n_points,
                                      const std::vector<std::vector<Point>>& generator_perms);

/// m points on a cycle with the discrete metric scaled to cycle distance / m.
/// For Z^n every generator rotates by one step; for F_k the first generator
/// rotates and the others reflect. The action is total.
CompactificationModel make_cyclic_model(const WindowPtr& window, int m);

}  // namespace ccw

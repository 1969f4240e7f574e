#pragma once

#include "ccw/space.hpp"
#include "ccw/window.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ccw {

using Subset = boost::dynamic_bitset<>;

/// How a window element h moves a ground element.
///   Diagonal    h.(g, x) = (hg, h.x)
///   Translation h.(g, x) = (hg, x)
///   PointsOnly  the ground set is the point set alone and h.x is the point action
enum class ActionMode { Diagonal, Translation, PointsOnly };

const char* to_string(ActionMode mode);
ActionMode parse_action_mode(std::string_view text);

/// Reads CCW_MAX_GROUND (default 10^6).
std::size_t max_ground_from_env();

/// Window x Points. Element (g, x) has index g * |Points| + x.
class GroundSet {
 public:
  GroundSet(WindowPtr window, std::size_t n_points, ActionMode mode,
            std::shared_ptr<const PartialAction> action = nullptr, std::size_t max_size = kDefaultWindowCap);

  const WindowPtr& window() const { return window_; }
  std::size_t n_points() const { return n_points_; }
  ActionMode mode() const { return mode_; }
  const std::shared_ptr<const PartialAction>& action() const { return action_; }
  std::size_t size() const { return mode_ == ActionMode::PointsOnly ? n_points_ : window_->size() * n_points_; }

  std::size_t index(Index g, Point x) const {
    return mode_ == ActionMode::PointsOnly ? static_cast<std::size_t>(x)
                                           : static_cast<std::size_t>(g) * n_points_ + static_cast<std::size_t>(x);
  }
  Index group_part(std::size_t p) const {
    return mode_ == ActionMode::PointsOnly ? window_->identity() : static_cast<Index>(p / n_points_);
  }
  Point point_part(std::size_t p) const { return static_cast<Point>(p % n_points_); }

  /// h.p, or empty when undefined inside the window.
  std::optional<std::size_t> act(Index h, std::size_t p) const;

  Subset empty() const { return Subset(size()); }
  Subset full() const { return Subset(size()).set(); }
  /// gs x xs.
  Subset product(std::span<const Index> gs, std::span<const Point> xs) const;
  /// Window x {points}.
  Subset fiber_product(std::span<const Point> xs) const;

  std::string format(std::size_t p) const;

 private:
  WindowPtr window_;
  std::size_t n_points_;
  ActionMode mode_;
  std::shared_ptr<const PartialAction> action_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

}  // namespace ccw

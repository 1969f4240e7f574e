#include "ccw/ground.hpp"

#include "ccw/error.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

namespace ccw {

const char* to_string(ActionMode mode) {
  switch (mode) {
    case ActionMode::Diagonal: return "diagonal";
    case ActionMode::Translation: return "translation";
    case ActionMode::PointsOnly: return "points";
  }
  return "?";
}

ActionMode parse_action_mode(std::string_view text) {
  if (text == "diagonal") return ActionMode::Diagonal;
  if (text == "translation") return ActionMode::Translation;
  if (text == "points") return ActionMode::PointsOnly;
  fail(ErrorKind::Schema, "unknown action mode '" + std::string(text) + "'");
}

std::size_t max_ground_from_env() {
  const char* env = std::getenv("CCW_MAX_GROUND");
  if (!env || !*env) return kDefaultWindowCap;
  std::size_t value = 0;
  std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    fail(ErrorKind::InvalidArgument, "CCW_MAX_GROUND must be a positive integer");
  }
  return value;
}

GroundSet::GroundSet(WindowPtr window, std::size_t n_points, ActionMode mode,
                     std::shared_ptr<const PartialAction> action, std::size_t max_size)
    : window_(std::move(window)), n_points_(n_points), mode_(mode), action_(std::move(action)) {
  if (!window_) fail(ErrorKind::InvalidArgument, "ground set without window");
  if (n_points_ == 0) fail(ErrorKind::InvalidArgument, "ground set without points");
  if (mode_ != ActionMode::Translation) {
    if (!action_) fail(ErrorKind::InvalidArgument, "diagonal and point actions need a point action");
    if (action_->n_points() != n_points_ || action_->window() != window_) {
      fail(ErrorKind::InvalidArgument, "point action does not match the ground set");
    }
  }
  if (size() > max_size) {
    fail(ErrorKind::SizeCap, "ground set of " + std::to_string(size()) + " elements exceeds the cap of " +
                                 std::to_string(max_size));
  }
}

std::optional<std::size_t> GroundSet::act(Index h, std::size_t p) const {
  const Point x = point_part(p);
  switch (mode_) {
    case ActionMode::PointsOnly: {
      Point hx = action_->act(h, x);
      if (hx == kUndefined) return std::nullopt;
      return static_cast<std::size_t>(hx);
    }
    case ActionMode::Translation: {
      auto hg = window_->multiply(h, group_part(p));
      if (!hg) return std::nullopt;
      return index(*hg, x);
    }
    case ActionMode::Diagonal: {
      Point hx = action_->act(h, x);
      if (hx == kUndefined) return std::nullopt;
      auto hg = window_->multiply(h, group_part(p));
      if (!hg) return std::nullopt;
      return index(*hg, hx);
    }
  }
  return std::nullopt;
}

Subset GroundSet::product(std::span<const Index> gs, std::span<const Point> xs) const {
  Subset s = empty();
  for (auto g : gs) {
    for (auto x : xs) s.set(index(g, x));
  }
  return s;
}

Subset GroundSet::fiber_product(std::span<const Point> xs) const {
  Subset s = empty();
  const std::size_t rows = mode_ == ActionMode::PointsOnly ? 1 : window_->size();
  for (std::size_t g = 0; g < rows; ++g) {
    for (auto x : xs) s.set(index(static_cast<Index>(g), x));
  }
  return s;
}

std::string GroundSet::format(std::size_t p) const {
  if (mode_ == ActionMode::PointsOnly) return std::to_string(p);
  return "(" + window_->format(group_part(p)) + ", " + std::to_string(point_part(p)) + ")";
}

}  // namespace ccw

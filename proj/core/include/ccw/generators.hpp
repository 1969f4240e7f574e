#pragma once

#include "ccw/cover.hpp"
#include "ccw/space.hpp"

#include <cstdint>
#include <vector>

namespace ccw {

/// {Window x Points}.
CoverFamily make_whole_cover(const GroundPtr& ground);

/// {Window x {y}} for every listed point.
CoverFamily make_singleton_cover(const GroundPtr& ground, const std::vector<Point>& points);

/// Bricks I x Points over a Z window: `layers` shifted tilings of Z by
/// intervals of length L, layer j shifted by floor(jL / layers). Members are
/// clipped to the window; empty ones are dropped. Dimension is layers - 1.
CoverFamily make_brick_cover(const GroundPtr& ground, int length, int layers);

/// Window x C for every cylinder C of boundary words sharing their first
/// `prefix` letters, in a tree model. A disjoint cover of Window x boundary.
CoverFamily make_cylinder_cover(const GroundPtr& ground, const CompactificationModel& model, int prefix);

struct RandomCoverParams {
  int blocks = 3;               // point partition size (at most the point count)
  double break_probability = 0;  // chance that a block's fiber is cut in two along the window
};

/// A disjoint cover: a random partition of the points into blocks, each block
/// carried by Window x P, optionally split along a random subset of the window.
CoverFamily make_random_disjoint_cover(const GroundPtr& ground, std::uint64_t seed, const RandomCoverParams& params);

/// |H| x base points with H acting freely by left multiplication, for a window
/// holding the whole finite group H. The metric is max_h d0(hy, hy') for a
/// seeded L1 metric d0 on distinct lattice points, hence H-invariant.
CompactificationModel make_free_orbit_space(const WindowPtr& finite_window, int base, std::uint64_t seed);

/// Equivariant cover of a PointsOnly ground: the translates of a few seeded
/// sections (one point from each of some orbits) plus unions of whole orbits
/// covering what is left. Translates of a section are disjoint when the action is free.
CoverFamily make_section_cover(const GroundPtr& ground, std::uint64_t seed, int sections = 3);

}  // namespace ccw

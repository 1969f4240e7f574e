#pragma once

#include "ccw/cover.hpp"
#include "ccw/space.hpp"

#include <cstddef>
#include <vector>

namespace ccw {

/// Orbit space of a finite group acting by isometries.
struct QuotientSpace {
  std::vector<std::vector<Point>> classes;  // sorted; ordered by smallest point
  std::vector<std::size_t> class_of;        // q
  FiniteMetricSpace space;                  // d'([y],[y']) = min_h d(hy, y')
};

/// The window must be the whole finite group and the action total and
/// isometric; throws Precondition otherwise.
QuotientSpace quotient_space(const FiniteMetricSpace& y, const PartialAction& action);

struct Refinement {
  std::vector<std::vector<Point>> members;  // nonempty, ordered by parent
  std::vector<std::size_t> parent;          // input member containing each output member
  std::vector<std::size_t> assignment;      // input member chosen for every point
  std::size_t unchanged = 0;                // output members equal to their parent
  int dimension = -1;
  bool optimal = true;                      // false when the greedy packing was used
};

inline constexpr std::size_t kExactRefinementLimit = 16;

/// Refinement by a partition: every point goes to one input member containing
/// it. Among all such partitions it maximizes the number of input members kept
/// whole, then takes the lexicographically smallest assignment. Exact up to
/// kExactRefinementLimit points. Throws Precondition when a point is uncovered.
Refinement min_dim_refinement(std::size_t n_points, const std::vector<std::vector<Point>>& cover);

struct Lift {
  CoverFamily cover;                 // on the PointsOnly ground of the original cover
  std::vector<std::size_t> choice;   // U_V for every member V of the refinement
  int dim_lift = -1;
  int dim_refinement = -1;
  bool refines = true;
  bool covers = true;
  bool parts_disjoint = true;        // distinct translates hU_V are disjoint
  bool stabilizers_match = true;     // Stab(q^-1(V) cap U_V) = Stab(U_V)
};

/// W = {q^-1(V) cap hU_V}, taking the lowest-index U_V with V inside q(U_V).
/// Throws Precondition when no member qualifies.
Lift equivariant_lift(const std::vector<std::vector<Point>>& refinement, const CoverFamily& cover,
                      const QuotientSpace& quotient);

}  // namespace ccw

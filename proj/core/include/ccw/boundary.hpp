#pragma once

#include "ccw/complex.hpp"
#include "ccw/cover.hpp"
#include "ccw/space.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace ccw {

struct SimplicialInteriorCover {
  /// Points are the chains of K (simplices of the first subdivision) with the
  /// discrete metric; the action is induced from K.
  FiniteMetricSpace points;
  std::vector<Simplex> chain_of_point;  // chain as a list of subdivision vertices
  std::shared_ptr<const PartialAction> action;
  CoverFamily cover;                    // one member Window x N(sigma) per simplex
  std::vector<Simplex> simplex_of_member;
  std::vector<std::vector<Index>> stabilizers;
  bool same_dimension_disjoint = true;
  int dimension = -1;
};

/// N(sigma) = chains containing sigma. Throws Precondition when a simplex
/// stabilizer leaves the family.
SimplicialInteriorCover simplicial_interior_cover(const SimplicialComplex& k, const FamilyPredicate& family);

struct ProperInteriorCover {
  CoverFamily cover;                          // diagonal action, members Window x gU_x
  std::vector<Point> representatives;
  std::map<Point, std::vector<Point>> neighbourhood;  // U_x for every representative
  std::map<Point, std::size_t> return_set_size;       // |RS_x| within the window
  bool stabilizers_match = true;              // Stab(U_x) = Stab(x) for every representative
  bool proper = true;                         // always true on finite models
};

/// Shrinks balls around interior points until translates are equal or
/// disjoint, then intersects over the point stabilizer.
ProperInteriorCover proper_interior_cover(const CompactificationModel& model, const FamilyPredicate& family);

/// eps(x) for every boundary point: the largest value in realized distances
/// union {1}, at most 1, with B(x, eps) and the boundary inside every fiber
/// set containing x. Throws Precondition on an uncovered boundary point.
std::map<Point, Rational> boundary_epsilon(const CompactificationModel& model,
                                           const std::vector<std::vector<Point>>& fiber_sets);

struct BoundaryExtension {
  CoverFamily family;                       // U(V) for every member V
  std::vector<std::vector<Point>> fiber_sets;
  std::map<Point, Rational> epsilon;
  bool restriction_exact = true;            // U(V) meets Window x boundary in V
  bool intersection_law = true;
  std::size_t intersections_checked = 0;
  bool equivariant = true;
  std::size_t equivariance_checked = 0;
  int dim_source = -1;
  int dim_extension = -1;
  Rational coverage = 1;                    // fraction of fibers with all translates defined
};

/// U(Y) = union of B(x, eps(x)/2) over x in Y. In translation mode every
/// fiber is enlarged in place, U(V)_g = U(V_g), using all fibers as the
/// reference sets. In diagonal mode U(V)_g = g U(g^-1 V_g) with the identity
/// slices as reference sets, skipping undefined translates.
BoundaryExtension extend_boundary_cover(const CoverFamily& boundary_cover, const CompactificationModel& model);

/// U(Y) as a sorted point list.
std::vector<Point> enlarge(const CompactificationModel& model, const std::map<Point, Rational>& eps,
                           const std::vector<Point>& y);

struct AssembledCover {
  CoverFamily family;
  int dim = -1;
  int dim_boundary_part = -1;
  int dim_interior_part = -1;
  int bound = -1;
  LebesgueResult lebesgue;
  LebesgueResult boundary_lebesgue;   // boundary part on Window x boundary
  LebesgueResult interior_lebesgue;   // interior part on Window x interior, alpha = R + 1
};

/// Union of both parts; throws Precondition on a coverage gap.
AssembledCover assemble_full_cover(const CoverFamily& boundary_part, const CoverFamily& interior_part,
                                   const CompactificationModel& model, const Rational& alpha);

}  // namespace ccw

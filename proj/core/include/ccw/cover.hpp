#pragma once

#include "ccw/family.hpp"
#include "ccw/ground.hpp"
#include "ccw/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ccw {

struct Orbit {
  std::size_t representative = 0;
  std::vector<std::size_t> members;
  std::vector<Index> stabilizer;  // window-stabilizer of the representative
};

struct CoverFamily {
  GroundPtr ground;
  std::vector<Subset> members;
  std::vector<Orbit> orbits;  // may be empty; see compute_orbits

  std::size_t size() const { return members.size(); }
  bool covers(const Subset& region) const;
  bool covers_ground() const;
};

/// For every ground element, the members containing it.
std::vector<std::vector<std::uint32_t>> membership(const CoverFamily& cover);

/// max_p #{U : p in U} - 1; -1 for an empty family.
int family_dimension(const CoverFamily& cover);

/// Ground element of maximal multiplicity (first in index order).
std::optional<std::size_t> max_multiplicity_point(const CoverFamily& cover);

struct LebesgueResult {
  bool pass = true;
  std::optional<std::size_t> witness;  // ground element (g, x) whose ball fits nowhere
  std::size_t inner_size = 0;
  bool alpha_is_infinite = false;      // alpha == R + 1
};

/// Every B(g, alpha) x {x} with g in the inner window and x in `points`
/// (all points when empty) lies in some member. Throws EmptyInnerWindow.
LebesgueResult lebesgue_check(const CoverFamily& cover, const Rational& alpha, std::span<const Point> points = {});

enum class TranslateRelation { Equal, Disjoint, Overlap, Undetermined };

struct TranslateComparison {
  TranslateRelation relation = TranslateRelation::Undetermined;
  std::size_t defined = 0;  // elements of U with h.p defined
  std::size_t total = 0;
};

/// Compares hU with V on the window: Equal when every defined image of U lands
/// in V and every defined preimage of V lies in U; Disjoint when no defined
/// image of U lands in V.
TranslateComparison compare_translate(const GroundSet& ground, const Subset& u, Index h, const Subset& v);

/// Image of U under h restricted to the elements where h acts.
Subset translate(const GroundSet& ground, const Subset& u, Index h);

struct FSubsetVerdict {
  enum class Status { Ok, OrbitOverlap, StabilizerViolation, InsufficientDomain };
  Status status = Status::Ok;
  std::optional<Index> witness;
  std::vector<Index> stabilizer;  // window-stabilizer
  SubgroupVerdict family;
  std::size_t determined = 0;     // window elements whose relation could be decided
  std::size_t window_size = 0;
  bool complete() const { return determined == window_size; }
};

const char* to_string(FSubsetVerdict::Status s);

FSubsetVerdict f_subset_check(const GroundSet& ground, const Subset& u, const FamilyPredicate& family);

/// Window-stabilizer of U (elements with hU = U on the window).
std::vector<Index> window_stabilizer(const GroundSet& ground, const Subset& u);

/// Elements h with p in U <=> hp in U for every p with p, hp in `domain`.
std::vector<Index> window_stabilizer(const GroundSet& ground, const Subset& u, const Subset& domain);

/// Groups members into orbits under the window action, lowest index first.
std::vector<Orbit> compute_orbits(const CoverFamily& cover);

/// For every member and window element the index of the member equal to hU,
/// or -1 when undetermined or absent. Row-major members x window.
std::vector<std::int32_t> member_action(const CoverFamily& cover);

struct MultiplicityResult {
  int value = 0;
  std::optional<std::size_t> witness;
  std::size_t inner_size = 0;
};

/// max over g in the inner window and all x of #{U : U meets B(g,d) x {x}}.
MultiplicityResult g_multiplicity(const CoverFamily& cover, const Rational& d);

/// B(U, alpha) = {(h,x) : B(h,alpha) x {x} meets U}, over the whole window
/// with clipped balls. Exact on the inner window.
Subset pad(const GroundSet& ground, const Subset& u, const Rational& alpha);

/// B(U, -alpha) = {(h,x) : B(h,alpha) x {x} inside U} with the same ball
/// convention, so shrink(U) = complement(pad(complement(U))) holds exactly.
Subset shrink(const GroundSet& ground, const Subset& u, const Rational& alpha);

/// Signed version: alpha > 0 pads, alpha < 0 shrinks, alpha = 0 is the identity.
Subset pad_shrink(const GroundSet& ground, const Subset& u, const Rational& alpha);

/// Elements (g, x) with g outside the inner window for |alpha|.
Subset clipped_region(const GroundSet& ground, const Rational& alpha);

struct DisjointnessResult {
  bool pass = true;
  std::size_t first = 0;
  std::size_t second = 0;
  std::optional<std::size_t> witness;  // element of B(U_first, r) and U_second
};

DisjointnessResult r_disjointness_check(const CoverFamily& cover, const Rational& r);

struct BoundarySplit {
  std::vector<std::size_t> interior_part;  // members missing Window x boundary
  std::vector<std::size_t> boundary_part;  // members meeting it
  bool interior_invariant = true;
  bool boundary_invariant = true;
  int dim_interior = -1;
  int dim_boundary = -1;
  int dim_total = -1;
  int bound = -1;  // dim_interior + dim_boundary + 1
};

BoundarySplit split_boundary_parts(const CoverFamily& cover, const std::vector<char>& boundary);

CoverFamily subfamily(const CoverFamily& cover, std::span<const std::size_t> indices);

}  // namespace ccw

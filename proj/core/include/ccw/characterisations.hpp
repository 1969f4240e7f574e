#pragma once

#include "ccw/complex.hpp"
#include "ccw/cover.hpp"
#include "ccw/homotopy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccw {

/// A table (g, x) -> normalized point of `complex`, defined on `domain`.
struct EquivariantMap {
  GroundPtr ground;
  Subset domain;
  std::vector<L1Point> table;  // indexed by ground element; empty outside the domain
  SimplicialComplex complex;
  int dimension = 0;           // n, the dimension of the cover the map came from
  Rational measured_constant = 0;
  Rational certified_bound = 0;  // 0 when no bound applies

  const L1Point& at(std::size_t p) const { return table[p]; }
};

/// psi: X -> K.
struct AlmostEquivariantMap {
  std::size_t n_points = 0;
  std::vector<L1Point> table;
  SimplicialComplex complex;
  Rational measured_defect = 0;
  Rational defect_coverage = 1;  // fraction of (x, s) with s.psi(x) defined in K
};

/// max ||phi(g,x) - phi(g s^-1, f(x))|| over s in S, f in F_s and both points in the domain.
Rational antidiagonal_constant(const EquivariantMap& phi, const AdbEngine& engine);

struct DefectReport {
  Rational value = 0;
  std::size_t checked = 0;     // pairs (x, s) with s.psi(x) defined
  std::size_t candidates = 0;  // all pairs (x, s)
  Rational coverage() const { return candidates == 0 ? Rational(1) : Rational(checked, candidates); }
};

/// max ||psi(f(x)) - s.psi(x)|| over s in S, f in F_s, skipping pairs where
/// K's action on psi(x) is undefined.
DefectReport equivariance_defect(const AlmostEquivariantMap& psi, const AdbEngine& engine);

struct EquivarianceReport {
  bool exact = true;
  std::size_t checked = 0;
  std::optional<std::size_t> witness;
};

/// phi(hg, x) = h.phi(g, x) wherever both sides are defined (translation action).
EquivarianceReport check_equivariance(const EquivariantMap& phi);

/// Largest word length among group parts of the domain, and whether the domain
/// is exactly (ball of that radius) x Points.
struct DomainShape {
  int radius = -1;
  bool full_ball = false;
};
DomainShape domain_shape(const EquivariantMap& phi);

/// l_U(g,x) = max{r in 1..k : ADB^r(g,x) inside U} (0 if none), Phi = sum l_U e_U,
/// phi = Phi / |Phi| on the inner window for k * |S| + 1. The nerve complex
/// has one vertex per member. Throws Precondition when the cover is not k-long.
EquivariantMap cover_to_map(const CoverFamily& cover, const AdbEngine& engine, int k);

struct DisjointFamilies {
  std::vector<CoverFamily> families;  // grade 1 .. n+1 of the subdivision
  CoverFamily united;
  Rational k_constant = 0;            // constant of phi into K
  Rational sk_constant = 0;           // constant after re-expressing in SK
  Rational threshold = 0;             // 1 / ((n+1)(r+1))
  bool disjoint = true;
  LongnessResult longness;            // r-longness of the union
};

/// Antidiagonal constant of phi re-expressed in barycentric coordinates of SK.
Rational subdivision_constant(const EquivariantMap& phi, const AdbEngine& engine);

/// Preimages of open stars of the subdivision vertices, grouped by grade.
/// Requires the constant into SK to be at most 1/((n+1)(r+1)); r >= 0.
DisjointFamilies map_to_disjoint_families(const EquivariantMap& phi, const AdbEngine& engine, int n, int r);

/// Largest r >= 0 admitted by the constant of phi (capped at `cap`), or empty.
std::optional<int> admissible_r(const Rational& constant, int n, int cap);

/// psi(x) = phi(1, x). Requires the identity fiber in the domain.
AlmostEquivariantMap phi_to_psi(const EquivariantMap& phi, const AdbEngine& engine);

/// phi(g, x) = g.psi(x) for every window element acting on all of psi's supports.
EquivariantMap psi_to_phi(const AlmostEquivariantMap& psi, const AdbEngine& engine);

struct MultiplicityCover {
  CoverFamily family;        // {B(U, -d)}
  MultiplicityResult multiplicity;
  bool covers_inner = true;  // covers the inner window for d
  int source_dimension = -1;
  bool stabilizers_match = true;  // compared on the inner window for d
};

/// {B(U, -d)}; requires G-Lebesgue number d.
MultiplicityCover cover_to_multiplicity_cover(const CoverFamily& cover, const Rational& d);

struct LebesgueCover {
  CoverFamily family;        // {B(V, alpha)}
  int multiplicity = 0;      // (G, alpha)-multiplicity of the input
  int dimension = -1;        // over the whole window
  int inner_dimension = -1;  // over the inner window for alpha
  LebesgueResult lebesgue;
  int stabilizer_index_bound = 0;  // n + 1
};

/// {B(V, alpha)}; requires the input to cover the inner window for alpha.
LebesgueCover multiplicity_to_lebesgue_cover(const CoverFamily& family, const Rational& alpha);

struct PartitionMap {
  EquivariantMap map;
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> l;  // per ground element: (member, l_U) with l_U > 0
  bool lipschitz = true;        // |l_U(g,x) - l_U(gs,x)| <= 1
  bool invariant = true;        // l_U(g,x) = l_{jU}(j(g,x))
  std::size_t invariance_checked = 0;
  bool support = true;          // l_U > 0 implies (g,x) in U
  Rational bound = 0;           // 3(n+1)^2 / k
};

/// Weights w[U][x] on the identity slice. Empty selects the normalized
/// overlap count of the slices of I(U) = B(U, -k).
PartitionMap partition_lU(const CoverFamily& cover, int k, const std::vector<std::vector<Rational>>& weights = {});

struct ZeroDimReport {
  bool product = true;
  std::optional<std::size_t> bad_member;
  std::optional<std::size_t> witness;
  std::vector<std::vector<Point>> fibers;  // U_X for every member
  std::vector<std::size_t> orbit_sizes;    // orbit of U_X under the point action
  std::size_t inner_size = 0;
};

/// For a disjoint cover with G-Lebesgue number alpha > 1, every member meets
/// the inner window in inner x U_X.
ZeroDimReport zero_dim_structure_check(const CoverFamily& cover, const Rational& alpha);

struct AbelianReport {
  std::size_t member = 0;
  std::vector<char> stabilizes;
  SubgroupVerdict in_family;
  bool violation = false;
};

/// Commuting elements z of B(1, alpha) fixing x must stabilize the member
/// containing B(1, alpha) x {x}; reports whether <z> leaves the family.
AbelianReport abelian_obstruction_check(const CoverFamily& cover, const Rational& alpha, const std::vector<Index>& z,
                                        Point x, const FamilyPredicate& family);

}  // namespace ccw

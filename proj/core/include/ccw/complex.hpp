#pragma once

#include "ccw/rational.hpp"
#include "ccw/window.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ccw {

using Vertex = std::int32_t;
using Simplex = std::vector<Vertex>;  // sorted, nonempty

/// Sparse nonnegative vector on the vertices of a complex.
using L1Point = std::map<Vertex, Rational>;

Rational l1_norm(const L1Point& p);
Rational l1_distance(const L1Point& a, const L1Point& b);
/// p / |p|; throws on zero mass.
L1Point normalized(const L1Point& p);
Simplex support(const L1Point& p);

/// Abstract simplicial complex, closed under taking faces, with an optional
/// (partial) action of a group window on its vertices.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Builds the downward closure of `simplices`.
  SimplicialComplex(std::vector<std::string> vertex_labels, const std::vector<Simplex>& simplices);

  std::size_t n_vertices() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// All simplices ordered by (size, lexicographic).
  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::vector<Simplex> maximal_simplices() const;
  int dimension() const;
  bool contains(const Simplex& s) const;
  std::optional<std::size_t> simplex_index(const Simplex& s) const;

  /// vertex_action[g * n_vertices + v] = g.v or -1 when undefined.
  void set_action(WindowPtr window, std::vector<Vertex> vertex_action);
  bool has_action() const { return window_ != nullptr; }
  const WindowPtr& window() const { return window_; }
  const std::vector<Vertex>& vertex_action() const { return action_; }
  Vertex act(Index g, Vertex v) const {
    return action_[static_cast<std::size_t>(g) * labels_.size() + static_cast<std::size_t>(v)];
  }
  /// Image of a simplex, or empty when some vertex image is undefined.
  std::optional<Simplex> act(Index g, const Simplex& s) const;
  /// Image of a point, or empty when some support vertex image is undefined.
  std::optional<L1Point> act(Index g, const L1Point& p) const;

  /// Every defined image of a simplex is a simplex; empty string when fine.
  std::string validate_action() const;

  /// Window elements mapping `s` onto itself (setwise).
  std::vector<Index> stabilizer(const Simplex& s) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Simplex> simplices_;
  std::map<Simplex, std::size_t> index_;
  WindowPtr window_;
  std::vector<Vertex> action_;
};

/// Barycentric subdivision: vertex i of `complex` is the simplex
/// `vertex_simplex[i]` of the original, with grade = its cardinality.
struct Subdivision {
  SimplicialComplex complex;
  std::vector<Simplex> vertex_simplex;
  std::vector<int> grade;
  std::map<Simplex, Vertex> vertex_of;
};

Subdivision barycentric_subdivision(const SimplicialComplex& k);

/// Re-expresses a point of K in the coordinates of SK: with the coordinates
/// sorted p_1 >= ... >= p_m (ties by vertex), the subdivision vertex of the
/// top-i vertices gets weight i * (p_i - p_{i+1}).
L1Point subdivision_coordinates(const Subdivision& sk, const L1Point& p);

}  // namespace ccw

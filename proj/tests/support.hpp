#pragma once

#include "ccw/ground.hpp"
#include "ccw/space.hpp"
#include "ccw/window.hpp"

#include <memory>
#include <random>
#include <vector>

namespace ccw::testing {

inline WindowPtr z_window(int radius) { return GroupWindow::build(make_free_abelian(1), radius); }
inline WindowPtr zn_window(int rank, int radius) { return GroupWindow::build(make_free_abelian(rank), radius); }
inline WindowPtr f_window(int rank, int radius) { return GroupWindow::build(make_free(rank), radius); }

inline GroundPtr ground_for(const CompactificationModel& model, ActionMode mode) {
  return std::make_shared<GroundSet>(model.action.window(), model.space.size(), mode,
                                     std::make_shared<PartialAction>(model.action));
}

/// Brute-force open ball by direct distance evaluation.
inline std::vector<Index> ball_oracle(const GroupWindow& w, Index g, const Rational& alpha) {
  std::vector<Index> out;
  for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
    if (Rational(w.distance(g, h)) < alpha) out.push_back(h);
  }
  return out;
}

/// Random subset of the ground set with the given density.
inline Subset random_subset(const GroundSet& ground, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution coin(density);
  Subset s = ground.empty();
  for (std::size_t p = 0; p < ground.size(); ++p) {
    if (coin(rng)) s.set(p);
  }
  return s;
}

}  // namespace ccw::testing

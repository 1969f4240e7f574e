#pragma once

#include "ccw/group.hpp"
#include "ccw/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ccw {

/// Position of an element inside a GroupWindow.
using Index = std::int32_t;

inline constexpr std::size_t kDefaultWindowCap = 1'000'000;

struct Ball {
  std::vector<Index> elements;  // sorted by window index
  bool clipped = false;         // |g| + alpha > R + 1: part of the ball may lie outside
};

/// The closed word-length ball of radius R around the identity, with
/// elements ordered by (word length, normal form). Index 0 is the identity.
class GroupWindow {
 public:
  static std::shared_ptr<const GroupWindow> build(std::shared_ptr<const Group> group, int radius,
                                                  std::size_t max_elements = kDefaultWindowCap);

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  int radius() const { return radius_; }
  std::size_t size() const { return words_.size(); }

  Index identity() const { return 0; }
  const Word& word(Index i) const { return words_[static_cast<std::size_t>(i)]; }
  int length(Index i) const { return lengths_[static_cast<std::size_t>(i)]; }
  std::optional<Index> find(const Word& w) const;
  Index inverse(Index i) const { return inverse_[static_cast<std::size_t>(i)]; }

  /// Product inside the window; empty when g*h has word length > R.
  std::optional<Index> multiply(Index g, Index h) const;

  /// d_G(g, h) = |g^-1 h|, computed in the ambient group.
  int distance(Index g, Index h) const;

  /// Generators of the fixed symmetric set (identity excluded), as window indices.
  const std::vector<Index>& generators() const { return generators_; }

  /// Open ball {h in window : d(g,h) < alpha}.
  Ball ball(Index g, const Rational& alpha) const;

  /// Elements with |g| + alpha <= R + 1, i.e. whose alpha-balls are unclipped.
  std::vector<Index> inner_window(const Rational& alpha) const;
  bool in_inner(Index g, const Rational& alpha) const {
    return Rational(length(g)) + alpha <= Rational(radius_ + 1);
  }

  /// Number of elements with word length < alpha (the open ball at the identity).
  std::size_t ball_prefix(const Rational& alpha) const;

  std::string format(Index i) const { return group_->format(word(i)); }
  Index parse(std::string_view text) const;

 private:
  GroupWindow() = default;

  std::shared_ptr<const Group> group_;
  int radius_ = 0;
  std::vector<Word> words_;
  std::vector<int> lengths_;
  std::vector<Index> inverse_;
  std::vector<Index> generators_;
  std::unordered_map<Word, Index, WordHash> index_;
};

using WindowPtr = std::shared_ptr<const GroupWindow>;

}  // namespace ccw

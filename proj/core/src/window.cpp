#include "ccw/window.hpp"

#include "ccw/error.hpp"

#include <algorithm>

namespace ccw {

std::shared_ptr<const GroupWindow> GroupWindow::build(std::shared_ptr<const Group> group, int radius,
                                                      std::size_t max_elements) {
  if (!group) fail(ErrorKind::InvalidArgument, "null group");
  if (radius < 0) fail(ErrorKind::InvalidArgument, "window radius must be >= 0");

  std::shared_ptr<GroupWindow> w(new GroupWindow());
  w->group_ = std::move(group);
  w->radius_ = radius;

  const auto gens = w->group_->generators();
  std::vector<Word> layer{w->group_->identity()};
  std::unordered_map<Word, Index, WordHash> seen;
  seen.emplace(layer.front(), 0);
  std::vector<Word> all{layer.front()};
  std::vector<int> lengths{0};

  for (int len = 1; len <= radius && !layer.empty(); ++len) {
    std::vector<Word> next;
    for (const auto& g : layer) {
      for (const auto& s : gens) {
        Word h = w->group_->multiply(g, s);
        if (seen.emplace(h, 0).second) next.push_back(std::move(h));
      }
    }
    std::sort(next.begin(), next.end());
    if (all.size() + next.size() > max_elements) {
      fail(ErrorKind::SizeCap, "window of radius " + std::to_string(radius) + " exceeds the cap of " +
                                   std::to_string(max_elements) + " elements");
    }
    for (auto& h : next) {
      all.push_back(h);
      lengths.push_back(len);
    }
    layer = std::move(next);
  }

  w->words_ = std::move(all);
  w->lengths_ = std::move(lengths);
  for (std::size_t i = 0; i < w->words_.size(); ++i) w->index_[w->words_[i]] = static_cast<Index>(i);

  w->inverse_.resize(w->words_.size());
  for (std::size_t i = 0; i < w->words_.size(); ++i) {
    w->inverse_[i] = w->index_.at(w->group_->inverse(w->words_[i]));
  }
  for (const auto& s : gens) {
    if (auto it = w->index_.find(s); it != w->index_.end()) w->generators_.push_back(it->second);
  }
  std::sort(w->generators_.begin(), w->generators_.end());
  w->generators_.erase(std::unique(w->generators_.begin(), w->generators_.end()), w->generators_.end());
  return w;
}

std::optional<Index> GroupWindow::find(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> GroupWindow::multiply(Index g, Index h) const {
  return find(group_->multiply(word(g), word(h)));
}

int GroupWindow::distance(Index g, Index h) const {
  return group_->word_length(group_->multiply(group_->inverse(word(g)), word(h)));
}

std::size_t GroupWindow::ball_prefix(const Rational& alpha) const {
  auto it = std::partition_point(lengths_.begin(), lengths_.end(),
                                 [&](int len) { return Rational(len) < alpha; });
  return static_cast<std::size_t>(it - lengths_.begin());
}

Ball GroupWindow::ball(Index g, const Rational& alpha) const {
  Ball b;
  b.clipped = !in_inner(g, alpha);
  if (Rational(radius_ + 1) < alpha) {
    // Offsets longer than R are not enumerated; measure every element instead.
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (Rational(distance(g, static_cast<Index>(i))) < alpha) b.elements.push_back(static_cast<Index>(i));
    }
    return b;
  }
  const std::size_t prefix = ball_prefix(alpha);
  b.elements.reserve(prefix);
  for (std::size_t i = 0; i < prefix; ++i) {
    if (auto h = find(group_->multiply(word(g), words_[i]))) b.elements.push_back(*h);
  }
  std::sort(b.elements.begin(), b.elements.end());
  return b;
}

std::vector<Index> GroupWindow::inner_window(const Rational& alpha) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (in_inner(static_cast<Index>(i), alpha)) out.push_back(static_cast<Index>(i));
  }
  return out;
}

Index GroupWindow::parse(std::string_view text) const {
  auto idx = find(group_->parse(text));
  if (!idx) fail(ErrorKind::Schema, "element '" + std::string(text) + "' lies outside the window");
  return *idx;
}

}  // namespace ccw

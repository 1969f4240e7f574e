#include "ccw/space.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ccw {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<Rational> distances)
    : labels_(std::move(labels)), dist_(std::move(distances)) {
  const std::size_t n = labels_.size();
  if (dist_.size() != n * n) fail(ErrorKind::InvalidArgument, "distance table has wrong size");
  {
    std::set<std::string> unique(labels_.begin(), labels_.end());
    if (unique.size() != n) fail(ErrorKind::InvalidArgument, "duplicate point labels");
  }
  auto d = [&](std::size_t i, std::size_t j) -> const Rational& { return dist_[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0) fail(ErrorKind::InvalidArgument, "d(x,x) != 0 at " + labels_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) != d(j, i)) fail(ErrorKind::InvalidArgument, "metric is not symmetric");
      if (i != j && d(i, j) <= 0) {
        fail(ErrorKind::InvalidArgument, "d(x,y) <= 0 for distinct " + labels_[i] + ", " + labels_[j]);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d(i, k) > d(i, j) + d(j, k)) {
          fail(ErrorKind::InvalidArgument,
               "triangle inequality fails at " + labels_[i] + ", " + labels_[j] + ", " + labels_[k]);
        }
      }
    }
  }
}

std::optional<Point> FiniteMetricSpace::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Point>(it - labels_.begin());
}

std::vector<Rational> FiniteMetricSpace::distinct_distances() const {
  std::vector<Rational> out;
  for (const auto& v : dist_) {
    if (v > 0) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational FiniteMetricSpace::diameter() const {
  Rational best = 0;
  for (const auto& v : dist_) best = std::max(best, v);
  return best;
}

Rational FiniteMetricSpace::min_positive_distance() const {
  auto all = distinct_distances();
  return all.empty() ? Rational(0) : all.front();
}

// ---------------------------------------------------------------- actions

PartialAction::PartialAction(WindowPtr window, std::size_t n_points, std::vector<Point> table)
    : window_(std::move(window)), n_points_(n_points), table_(std::move(table)) {
  if (!window_) fail(ErrorKind::InvalidArgument, "action without window");
  if (table_.size() != window_->size() * n_points_) fail(ErrorKind::InvalidArgument, "action table has wrong size");
  for (auto v : table_) {
    if (v < kUndefined || v >= static_cast<Point>(n_points_)) {
      fail(ErrorKind::InvalidArgument, "action table entry out of range");
    }
  }
}

bool PartialAction::total_for(Index g) const {
  for (std::size_t x = 0; x < n_points_; ++x) {
    if (act(g, static_cast<Point>(x)) == kUndefined) return false;
  }
  return true;
}

bool PartialAction::is_total() const {
  return std::find(table_.begin(), table_.end(), kUndefined) == table_.end();
}

ActionReport PartialAction::validate() const {
  ActionReport report;
  const auto& w = *window_;
  for (std::size_t x = 0; x < n_points_; ++x) {
    if (act(w.identity(), static_cast<Point>(x)) != static_cast<Point>(x)) {
      report.ok = false;
      report.violation = "identity does not fix point " + std::to_string(x);
      return report;
    }
  }
  for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
    for (Index h = 0; h < static_cast<Index>(w.size()); ++h) {
      auto gh = w.multiply(g, h);
      if (!gh) continue;
      for (std::size_t xi = 0; xi < n_points_; ++xi) {
        const auto x = static_cast<Point>(xi);
        ++report.candidates;
        Point hx = act(h, x);
        if (hx == kUndefined) continue;
        Point ghx = act(g, hx);
        Point direct = act(*gh, x);
        if (ghx == kUndefined || direct == kUndefined) continue;
        ++report.checked;
        if (ghx != direct) {
          report.ok = false;
          report.violation = "(gh).x != g.(h.x) for g=" + w.format(g) + ", h=" + w.format(h) +
                             ", x=" + std::to_string(x);
          return report;
        }
      }
    }
  }
  return report;
}

bool PartialAction::is_isometric(const FiniteMetricSpace& space) const {
  for (Index g = 0; g < static_cast<Index>(window_->size()); ++g) {
    for (std::size_t x = 0; x < n_points_; ++x) {
      Point gx = act(g, static_cast<Point>(x));
      if (gx == kUndefined) continue;
      for (std::size_t y = x + 1; y < n_points_; ++y) {
        Point gy = act(g, static_cast<Point>(y));
        if (gy == kUndefined) continue;
        if (space.distance(gx, gy) != space.distance(static_cast<Point>(x), static_cast<Point>(y))) return false;
      }
    }
  }
  return true;
}

Rational PartialAction::coverage() const {
  if (table_.empty()) return 1;
  auto defined = std::count_if(table_.begin(), table_.end(), [](Point p) { return p != kUndefined; });
  return Rational(static_cast<std::int64_t>(defined), static_cast<std::int64_t>(table_.size()));
}

std::vector<Point> CompactificationModel::boundary_points() const {
  std::vector<Point> out;
  for (std::size_t x = 0; x < boundary.size(); ++x) {
    if (boundary[x]) out.push_back(static_cast<Point>(x));
  }
  return out;
}

std::vector<Point> CompactificationModel::interior_points() const {
  std::vector<Point> out;
  for (std::size_t x = 0; x < boundary.size(); ++x) {
    if (!boundary[x]) out.push_back(static_cast<Point>(x));
  }
  return out;
}

ActionReport CompactificationModel::validate() const {
  if (boundary.size() != space.size() || action.n_points() != space.size()) {
    ActionReport r;
    r.ok = false;
    r.violation = "boundary flags or action do not match the point set";
    return r;
  }
  for (Index g = 0; g < static_cast<Index>(action.window()->size()); ++g) {
    for (std::size_t x = 0; x < space.size(); ++x) {
      Point gx = action.act(g, static_cast<Point>(x));
      if (gx != kUndefined && boundary[static_cast<std::size_t>(gx)] != boundary[x]) {
        ActionReport r;
        r.ok = false;
        r.violation = "action does not preserve the boundary at g=" + action.window()->format(g) +
                      ", x=" + space.label(static_cast<Point>(x));
        return r;
      }
    }
  }
  return action.validate();
}

// ---------------------------------------------------------------- builders

CompactificationModel make_interval_compactification(const WindowPtr& z_window) {
  const auto* z = dynamic_cast<const FreeAbelianGroup*>(&z_window->group());
  if (!z || z->rank() != 1) fail(ErrorKind::InvalidArgument, "interval model needs a window of Z");
  const int R = z_window->radius();
  const std::size_t n = static_cast<std::size_t>(2 * R + 3);

  std::vector<std::string> labels;
  std::vector<Rational> t;
  labels.push_back("-inf");
  t.emplace_back(-1);
  for (int x = -R; x <= R; ++x) {
    labels.push_back(std::to_string(x));
    t.emplace_back(x, (x < 0 ? -x : x) + 1);
  }
  labels.push_back("+inf");
  t.emplace_back(1);

  std::vector<Rational> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = abs(t[i] - t[j]);
  }

  std::vector<Point> table(z_window->size() * n, kUndefined);
  for (Index g = 0; g < static_cast<Index>(z_window->size()); ++g) {
    const int shift = z_window->word(g)[0];
    auto row = static_cast<std::size_t>(g) * n;
    table[row] = 0;
    table[row + n - 1] = static_cast<Point>(n - 1);
    for (int x = -R; x <= R; ++x) {
      int y = x + shift;
      if (y >= -R && y <= R) table[row + static_cast<std::size_t>(x + R + 1)] = static_cast<Point>(y + R + 1);
    }
  }

  CompactificationModel model;
  model.space = FiniteMetricSpace(std::move(labels), std::move(dist));
  model.boundary.assign(n, 0);
  model.boundary.front() = 1;
  model.boundary.back() = 1;
  model.action = PartialAction(z_window, n, std::move(table));
  return model;
}

CompactificationModel make_tree_boundary_model(const WindowPtr& free_window, int depth, std::size_t max_points) {
  const auto* f = dynamic_cast<const FreeGroup*>(&free_window->group());
  if (!f) fail(ErrorKind::InvalidArgument, "tree model needs a window of a free group");
  if (depth < 1) fail(ErrorKind::InvalidArgument, "tree depth must be >= 1");

  // Reduced words up to length `depth`, ordered by (length, word).
  auto words_window = GroupWindow::build(free_window->group_ptr(), depth, max_points);
  const std::size_t n = words_window->size();

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(words_window->format(static_cast<Index>(i)));

  std::vector<Rational> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = words_window->word(static_cast<Index>(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& b = words_window->word(static_cast<Index>(j));
      std::size_t lcp = 0;
      while (lcp < a.size() && lcp < b.size() && a[lcp] == b[lcp]) ++lcp;
      dist[i * n + j] = Rational(1, std::int64_t{1} << lcp);
    }
  }

  std::vector<char> boundary(n, 0);
  for (std::size_t i = 0; i < n; ++i) boundary[i] = words_window->length(static_cast<Index>(i)) == depth;

  std::vector<Point> table(free_window->size() * n, kUndefined);
  for (Index g = 0; g < static_cast<Index>(free_window->size()); ++g) {
    const auto& gw = free_window->word(g);
    for (std::size_t x = 0; x < n; ++x) {
      const auto& xw = words_window->word(static_cast<Index>(x));
      std::size_t cancel = 0;
      while (cancel < gw.size() && cancel < xw.size() && gw[gw.size() - 1 - cancel] == -xw[cancel]) ++cancel;
      Word product(gw.begin(), gw.end() - static_cast<std::ptrdiff_t>(cancel));
      product.insert(product.end(), xw.begin() + static_cast<std::ptrdiff_t>(cancel), xw.end());
      Point target = kUndefined;
      if (!boundary[x]) {
        if (static_cast<int>(product.size()) < depth) target = *words_window->find(product);
      } else if (static_cast<int>(cancel) < depth && static_cast<int>(product.size()) >= depth) {
        product.resize(static_cast<std::size_t>(depth));
        target = *words_window->find(product);
      }
      table[static_cast<std::size_t>(g) * n + x] = target;
    }
  }

  CompactificationModel model;
  model.space = FiniteMetricSpace(std::move(labels), std::move(dist));
  model.boundary = std::move(boundary);
  model.action = PartialAction(free_window, n, std::move(table));
  return model;
}

PartialAction make_permutation_action(const WindowPtr& window, std::size_t n_points,
                                      const std::vector<std::vector<Point>>& generator_perms) {
  const auto& group = window->group();
  const auto gens = group.generators();
  if (generator_perms.size() != gens.size()) {
    fail(ErrorKind::InvalidArgument, "need one permutation per generator");
  }
  std::map<Index, const std::vector<Point>*> perm_of;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (generator_perms[i].size() != n_points) fail(ErrorKind::InvalidArgument, "permutation has wrong size");
    std::vector<char> hit(n_points, 0);
    for (auto p : generator_perms[i]) {
      if (p < 0 || p >= static_cast<Point>(n_points) || hit[static_cast<std::size_t>(p)]) {
        fail(ErrorKind::InvalidArgument, "generator map is not a permutation");
      }
      hit[static_cast<std::size_t>(p)] = 1;
    }
    if (auto idx = window->find(gens[i])) perm_of[*idx] = &generator_perms[i];
  }

  std::vector<Point> table(window->size() * n_points, kUndefined);
  for (std::size_t x = 0; x < n_points; ++x) table[x] = static_cast<Point>(x);
  for (Index g = 1; g < static_cast<Index>(window->size()); ++g) {
    // g = parent * s with |parent| = |g| - 1, so g.x = parent.(s.x).
    bool done = false;
    for (const auto& [s, perm] : perm_of) {
      auto parent = window->multiply(g, window->inverse(s));
      if (!parent || window->length(*parent) != window->length(g) - 1) continue;
      for (std::size_t x = 0; x < n_points; ++x) {
        auto sx = static_cast<std::size_t>((*perm)[x]);
        table[static_cast<std::size_t>(g) * n_points + x] = table[static_cast<std::size_t>(*parent) * n_points + sx];
      }
      done = true;
      break;
    }
    if (!done) fail(ErrorKind::InvalidArgument, "window element without a parent");
  }
  return PartialAction(window, n_points, std::move(table));
}

CompactificationModel make_cyclic_model(const WindowPtr& window, int m) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "cycle length must be >= 1");
  const auto n = static_cast<std::size_t>(m);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back("c" + std::to_string(i));
  std::vector<Rational> dist(n * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int k = i > j ? i - j : j - i;
      dist[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = Rational(std::min(k, m - k), m);
    }
  }

  std::vector<Point> rotate(n), unrotate(n), reflect(n);
  for (int i = 0; i < m; ++i) {
    rotate[static_cast<std::size_t>(i)] = (i + 1) % m;
    unrotate[static_cast<std::size_t>(i)] = (i + m - 1) % m;
    reflect[static_cast<std::size_t>(i)] = (m - i) % m;
  }
  std::vector<std::vector<Point>> perms;
  const auto& group = window->group();
  if (group.kind() == GroupKind::FreeAbelian) {
    for (const auto& s : group.generators()) {
      bool positive = std::any_of(s.begin(), s.end(), [](auto v) { return v > 0; });
      perms.push_back(positive ? rotate : unrotate);
    }
  } else if (group.kind() == GroupKind::Free) {
    for (const auto& s : group.generators()) {
      if (s[0] == 1) perms.push_back(rotate);
      else if (s[0] == -1) perms.push_back(unrotate);
      else perms.push_back(reflect);
    }
  } else {
    fail(ErrorKind::InvalidArgument, "cyclic model supports free and free abelian groups");
  }

  CompactificationModel model;
  model.space = FiniteMetricSpace(std::move(labels), std::move(dist));
  model.boundary.assign(n, 0);
  model.action = make_permutation_action(window, n, perms);
  return model;
}

}  // namespace ccw

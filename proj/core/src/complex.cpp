#include "ccw/complex.hpp"

#include "ccw/error.hpp"

#include <algorithm>
#include <set>

namespace ccw {

Rational l1_norm(const L1Point& p) {
  Rational sum = 0;
  for (const auto& [v, c] : p) sum += abs(c);
  return sum;
}

Rational l1_distance(const L1Point& a, const L1Point& b) {
  Rational sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += abs(ib->second);
      ++ib;
    } else {
      sum += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum;
}

L1Point normalized(const L1Point& p) {
  Rational mass = l1_norm(p);
  if (mass == 0) fail(ErrorKind::Precondition, "cannot normalize a zero-mass point");
  L1Point out;
  for (const auto& [v, c] : p) {
    if (c != 0) out[v] = c / mass;
  }
  return out;
}

Simplex support(const L1Point& p) {
  Simplex s;
  for (const auto& [v, c] : p) {
    if (c != 0) s.push_back(v);
  }
  return s;
}

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertex_labels, const std::vector<Simplex>& simplices)
    : labels_(std::move(vertex_labels)) {
  std::set<Simplex> all;
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) fail(ErrorKind::InvalidArgument, "empty simplex");
    if (s.size() > 20) fail(ErrorKind::SizeCap, "simplex dimension too large");
    for (auto v : s) {
      if (v < 0 || v >= static_cast<Vertex>(labels_.size())) fail(ErrorKind::InvalidArgument, "simplex vertex out of range");
    }
    if (all.count(s)) continue;
    const std::uint32_t full = (1u << s.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask & (1u << i)) face.push_back(s[i]);
      }
      all.insert(std::move(face));
    }
  }
  for (std::size_t v = 0; v < labels_.size(); ++v) all.insert(Simplex{static_cast<Vertex>(v)});
  simplices_.assign(all.begin(), all.end());
  std::stable_sort(simplices_.begin(), simplices_.end(),
                   [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
  for (std::size_t i = 0; i < simplices_.size(); ++i) index_[simplices_[i]] = i;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_) {
    bool maximal = true;
    for (Vertex v = 0; v < static_cast<Vertex>(labels_.size()) && maximal; ++v) {
      if (std::binary_search(s.begin(), s.end(), v)) continue;
      Simplex bigger = s;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
      if (index_.count(bigger)) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int SimplicialComplex::dimension() const {
  return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1;
}

bool SimplicialComplex::contains(const Simplex& s) const { return index_.count(s) != 0; }

std::optional<std::size_t> SimplicialComplex::simplex_index(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void SimplicialComplex::set_action(WindowPtr window, std::vector<Vertex> vertex_action) {
  if (!window) fail(ErrorKind::InvalidArgument, "action without window");
  if (vertex_action.size() != window->size() * labels_.size()) {
    fail(ErrorKind::InvalidArgument, "vertex action table has wrong size");
  }
  window_ = std::move(window);
  action_ = std::move(vertex_action);
}

std::optional<Simplex> SimplicialComplex::act(Index g, const Simplex& s) const {
  Simplex out;
  for (auto v : s) {
    Vertex gv = act(g, v);
    if (gv < 0) return std::nullopt;
    out.push_back(gv);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<L1Point> SimplicialComplex::act(Index g, const L1Point& p) const {
  L1Point out;
  for (const auto& [v, c] : p) {
    Vertex gv = act(g, v);
    if (gv < 0) return std::nullopt;
    out[gv] += c;
  }
  return out;
}

std::string SimplicialComplex::validate_action() const {
  if (!window_) return {};
  for (Index g = 0; g < static_cast<Index>(window_->size()); ++g) {
    for (const auto& s : simplices_) {
      auto image = act(g, s);
      if (!image) continue;
      if (std::adjacent_find(image->begin(), image->end()) != image->end() || !contains(*image)) {
        return "element " + window_->format(g) + " does not map a simplex to a simplex";
      }
    }
  }
  return {};
}

std::vector<Index> SimplicialComplex::stabilizer(const Simplex& s) const {
  std::vector<Index> out;
  if (!window_) return out;
  for (Index g = 0; g < static_cast<Index>(window_->size()); ++g) {
    auto image = act(g, s);
    if (image && *image == s) out.push_back(g);
  }
  return out;
}

Subdivision barycentric_subdivision(const SimplicialComplex& k) {
  Subdivision sd;
  const auto& simplices = k.simplices();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    sd.vertex_simplex.push_back(simplices[i]);
    sd.grade.push_back(static_cast<int>(simplices[i].size()));
    sd.vertex_of[simplices[i]] = static_cast<Vertex>(i);
    std::string label = "{";
    for (std::size_t j = 0; j < simplices[i].size(); ++j) {
      if (j) label += ",";
      label += k.labels()[static_cast<std::size_t>(simplices[i][j])];
    }
    labels.push_back(label + "}");
  }

  // Maximal chains: extend every chain upward by one vertex at a time. Only
  // maximal chains are needed since the constructor closes downward.
  std::vector<Simplex> chains;
  std::vector<Simplex> stack;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    if (simplices[i].size() == 1) stack.push_back({static_cast<Vertex>(i)});
  }
  while (!stack.empty()) {
    Simplex chain = std::move(stack.back());
    stack.pop_back();
    const auto& top = simplices[static_cast<std::size_t>(chain.back())];
    bool extended = false;
    for (Vertex v = 0; v < static_cast<Vertex>(k.n_vertices()); ++v) {
      if (std::binary_search(top.begin(), top.end(), v)) continue;
      Simplex bigger = top;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
      if (auto idx = k.simplex_index(bigger)) {
        Simplex next = chain;
        next.push_back(static_cast<Vertex>(*idx));
        stack.push_back(std::move(next));
        extended = true;
      }
    }
    if (!extended) chains.push_back(std::move(chain));
  }
  sd.complex = SimplicialComplex(std::move(labels), chains);

  if (k.has_action()) {
    const auto& w = k.window();
    const std::size_t n = simplices.size();
    std::vector<Vertex> action(w->size() * n, -1);
    for (Index g = 0; g < static_cast<Index>(w->size()); ++g) {
      for (std::size_t i = 0; i < n; ++i) {
        if (auto image = k.act(g, simplices[i])) {
          if (auto it = sd.vertex_of.find(*image); it != sd.vertex_of.end()) {
            action[static_cast<std::size_t>(g) * n + i] = it->second;
          }
        }
      }
    }
    sd.complex.set_action(w, std::move(action));
  }
  return sd;
}

L1Point subdivision_coordinates(const Subdivision& sk, const L1Point& p) {
  std::vector<std::pair<Vertex, Rational>> coords;
  for (const auto& [v, c] : p) {
    if (c != 0) coords.emplace_back(v, c);
  }
  std::stable_sort(coords.begin(), coords.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  L1Point out;
  Simplex top;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    top.insert(std::upper_bound(top.begin(), top.end(), coords[i].first), coords[i].first);
    Rational next = i + 1 < coords.size() ? coords[i + 1].second : Rational(0);
    Rational weight = Rational(static_cast<std::int64_t>(i + 1)) * (coords[i].second - next);
    if (weight == 0) continue;
    auto it = sk.vertex_of.find(top);
    if (it == sk.vertex_of.end()) fail(ErrorKind::Precondition, "point support is not a simplex of the complex");
    out[it->second] = weight;
  }
  return out;
}

}  // namespace ccw

#include "ccw/serialize.hpp"

#include "ccw/error.hpp"

#include <algorithm>

namespace ccw {

namespace {

constexpr std::string_view kPrefix = "ccw/v1/";

template <class F>
auto guarded(std::string_view what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Schema, std::string(what) + ": " + e.what());
  }
}

std::vector<Point> point_list(const Json& j, std::size_t n) {
  std::vector<Point> out;
  for (const auto& v : j) {
    auto x = v.get<std::int64_t>();
    if (x < 0 || static_cast<std::size_t>(x) >= n) fail(ErrorKind::Schema, "point index out of range");
    out.push_back(static_cast<Point>(x));
  }
  return out;
}

Json point_map_json(const PointMap& m) { return Json(m); }

PointMap point_map_from_json(const Json& j, std::size_t n) {
  auto m = point_list(j, n);
  if (m.size() != n) fail(ErrorKind::Schema, "point map has the wrong length");
  return m;
}

}  // namespace

std::string schema_name(std::string_view kind) { return std::string(kPrefix) + std::string(kind); }

std::string schema_kind(const Json& doc) {
  if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
    fail(ErrorKind::Schema, "document has no schema field");
  }
  const auto s = doc["schema"].get<std::string>();
  if (s.rfind(kPrefix, 0) != 0) fail(ErrorKind::Schema, "unknown schema " + s);
  return s.substr(kPrefix.size());
}

void expect_schema(const Json& doc, std::string_view kind) {
  const auto k = schema_kind(doc);
  if (k != kind) fail(ErrorKind::Schema, "expected a " + std::string(kind) + " document, got " + k);
}

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(ErrorKind::Schema, "rational must be a string or an integer");
  return parse_rational(j.get<std::string>());
}

Json group_json(const Group& group) {
  switch (group.kind()) {
    case GroupKind::FreeAbelian:
      return {{"kind", "free_abelian"}, {"rank", static_cast<const FreeAbelianGroup&>(group).rank()}};
    case GroupKind::Free:
      return {{"kind", "free"}, {"rank", static_cast<const FreeGroup&>(group).rank()}};
    case GroupKind::Finite: {
      const auto& f = static_cast<const FiniteGroup&>(group);
      return {{"kind", "finite"}, {"table", f.table()}, {"generators", f.generator_indices()}};
    }
    case GroupKind::Product: {
      Json factors = Json::array();
      for (const auto& g : static_cast<const ProductGroup&>(group).factors()) factors.push_back(group_json(*g));
      return {{"kind", "product"}, {"factors", factors}};
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown group kind");
}

std::shared_ptr<const Group> group_from_json(const Json& j) {
  return guarded("group", [&]() -> std::shared_ptr<const Group> {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "free_abelian") return make_free_abelian(j.at("rank").get<int>());
    if (kind == "free") return make_free(j.at("rank").get<int>());
    if (kind == "finite") {
      return std::make_shared<FiniteGroup>(j.at("table").get<std::vector<std::vector<int>>>(),
                                           j.at("generators").get<std::vector<int>>());
    }
    if (kind == "product") {
      std::vector<std::shared_ptr<const Group>> factors;
      for (const auto& f : j.at("factors")) factors.push_back(group_from_json(f));
      return std::make_shared<ProductGroup>(std::move(factors));
    }
    fail(ErrorKind::Schema, "unknown group kind " + kind);
  });
}

Json window_doc(const GroupWindow& window) {
  return {{"schema", schema_name("group_window")},
          {"group", group_json(window.group())},
          {"radius", window.radius()},
          {"size", window.size()}};
}

WindowPtr window_from_doc(const Json& doc, std::size_t max_elements) {
  expect_schema(doc, "group_window");
  return guarded("group_window", [&] {
    auto w = GroupWindow::build(group_from_json(doc.at("group")), doc.at("radius").get<int>(), max_elements);
    if (doc.contains("size") && doc["size"].get<std::size_t>() != w->size()) {
      fail(ErrorKind::Schema, "window size does not match its group and radius");
    }
    return w;
  });
}

Json space_doc(const CompactificationModel& model) {
  const auto& space = model.space;
  const std::size_t n = space.size();
  Json dist = Json::array();
  for (std::size_t x = 0; x < n; ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < n; ++y) row.push_back(rational_json(space.distance(static_cast<Point>(x), static_cast<Point>(y))));
    dist.push_back(std::move(row));
  }
  const auto& w = *model.action.window();
  Json action = Json::array();
  for (Index g = 0; g < static_cast<Index>(w.size()); ++g) {
    Json row = Json::array();
    for (std::size_t x = 0; x < n; ++x) row.push_back(model.action.act(g, static_cast<Point>(x)));
    action.push_back(std::move(row));
  }
  return {{"schema", schema_name("space")},
          {"window", window_doc(w)},
          {"labels", space.labels()},
          {"distances", std::move(dist)},
          {"boundary", model.boundary_points()},
          {"action", std::move(action)}};
}

CompactificationModel model_from_doc(const Json& doc, std::size_t max_elements) {
  expect_schema(doc, "space");
  return guarded("space", [&] {
    auto w = window_from_doc(doc.at("window"), max_elements);
    auto labels = doc.at("labels").get<std::vector<std::string>>();
    const std::size_t n = labels.size();
    const auto& rows = doc.at("distances");
    if (rows.size() != n) fail(ErrorKind::Schema, "distance matrix has the wrong size");
    std::vector<Rational> dist;
    dist.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) fail(ErrorKind::Schema, "distance matrix has the wrong size");
      for (const auto& d : row) dist.push_back(rational_from_json(d));
    }
    std::vector<char> boundary(n, 0);
    for (auto x : point_list(doc.at("boundary"), n)) boundary[static_cast<std::size_t>(x)] = 1;
    const auto& act = doc.at("action");
    if (act.size() != w->size()) fail(ErrorKind::Schema, "action table has the wrong number of rows");
    std::vector<Point> table;
    table.reserve(w->size() * n);
    for (const auto& row : act) {
      if (row.size() != n) fail(ErrorKind::Schema, "action row has the wrong length");
      for (const auto& v : row) {
        auto y = v.get<std::int64_t>();
        if (y < kUndefined || y >= static_cast<std::int64_t>(n)) fail(ErrorKind::Schema, "action value out of range");
        table.push_back(static_cast<Point>(y));
      }
    }
    CompactificationModel model{FiniteMetricSpace(std::move(labels), std::move(dist)), std::move(boundary),
                                PartialAction(w, n, std::move(table))};
    auto report = model.validate();
    if (!report.ok) fail(ErrorKind::Schema, "invalid action: " + report.violation);
    return model;
  });
}

Json subset_json(const Subset& s) {
  Json out = Json::array();
  for (auto p = s.find_first(); p != Subset::npos; p = s.find_next(p)) out.push_back(p);
  return out;
}

Subset subset_from_json(const Json& j, const GroundSet& ground) {
  return guarded("subset", [&] {
    Subset s = ground.empty();
    for (const auto& v : j) {
      auto p = v.get<std::int64_t>();
      if (p < 0 || static_cast<std::size_t>(p) >= ground.size()) fail(ErrorKind::Schema, "ground index out of range");
      s.set(static_cast<std::size_t>(p));
    }
    return s;
  });
}

Json cover_doc(const CoverFamily& cover) {
  const auto& g = *cover.ground;
  Json members = Json::array();
  for (const auto& m : cover.members) members.push_back(subset_json(m));
  return {{"schema", schema_name("cover")},
          {"mode", to_string(g.mode())},
          {"n_points", g.n_points()},
          {"window_radius", g.window()->radius()},
          {"window_size", g.window()->size()},
          {"members", std::move(members)}};
}

ActionMode cover_mode(const Json& doc) {
  expect_schema(doc, "cover");
  return guarded("cover", [&] { return parse_action_mode(doc.at("mode").get<std::string>()); });
}

CoverFamily cover_from_doc(const Json& doc, const GroundPtr& ground) {
  expect_schema(doc, "cover");
  return guarded("cover", [&] {
    if (parse_action_mode(doc.at("mode").get<std::string>()) != ground->mode() ||
        doc.at("n_points").get<std::size_t>() != ground->n_points() ||
        doc.at("window_size").get<std::size_t>() != ground->window()->size()) {
      fail(ErrorKind::Schema, "cover does not match the ground set");
    }
    CoverFamily cover;
    cover.ground = ground;
    for (const auto& m : doc.at("members")) cover.members.push_back(subset_from_json(m, *ground));
    return cover;
  });
}

Json homotopy_doc(const HomotopyAction& ha) {
  const auto& w = *ha.window;
  Json s = Json::array();
  for (auto g : ha.S) s.push_back(w.format(g));
  Json phi = Json::object();
  for (const auto& [g, m] : ha.phi) phi[w.format(g)] = point_map_json(m);
  Json h = Json::array();
  for (const auto& [key, maps] : ha.H) {
    Json ms = Json::array();
    for (const auto& m : maps) ms.push_back(point_map_json(m));
    h.push_back({{"g", w.format(key.first)}, {"h", w.format(key.second)}, {"maps", std::move(ms)}});
  }
  Json grid = Json::array();
  for (const auto& t : ha.time_grid) grid.push_back(rational_json(t));
  return {{"schema", schema_name("homotopy_action")},
          {"window", window_doc(w)},
          {"n_points", ha.n_points},
          {"S", std::move(s)},
          {"phi", std::move(phi)},
          {"H", std::move(h)},
          {"time_grid", std::move(grid)}};
}

HomotopyAction homotopy_from_doc(const Json& doc, std::size_t max_elements) {
  expect_schema(doc, "homotopy_action");
  return guarded("homotopy_action", [&] {
    HomotopyAction ha;
    ha.window = window_from_doc(doc.at("window"), max_elements);
    const auto& w = *ha.window;
    ha.n_points = doc.at("n_points").get<std::size_t>();
    for (const auto& s : doc.at("S")) ha.S.push_back(w.parse(s.get<std::string>()));
    std::sort(ha.S.begin(), ha.S.end());
    for (const auto& [key, m] : doc.at("phi").items()) ha.phi[w.parse(key)] = point_map_from_json(m, ha.n_points);
    for (const auto& entry : doc.at("H")) {
      std::vector<PointMap> maps;
      for (const auto& m : entry.at("maps")) maps.push_back(point_map_from_json(m, ha.n_points));
      ha.H[{w.parse(entry.at("g").get<std::string>()), w.parse(entry.at("h").get<std::string>())}] = std::move(maps);
    }
    for (const auto& t : doc.at("time_grid")) ha.time_grid.push_back(rational_from_json(t));
    auto verdict = validate_homotopy_action(ha);
    if (!verdict.ok) fail(ErrorKind::Schema, "invalid homotopy action: " + verdict.violation);
    return ha;
  });
}

Json complex_doc(const SimplicialComplex& k) {
  Json doc = {{"schema", schema_name("complex")},
              {"labels", k.labels()},
              {"maximal", k.maximal_simplices()}};
  if (k.has_action()) {
    doc["window_size"] = k.window()->size();
    doc["action"] = k.vertex_action();
  }
  return doc;
}

SimplicialComplex complex_from_doc(const Json& doc, const WindowPtr& window) {
  expect_schema(doc, "complex");
  return guarded("complex", [&] {
    auto labels = doc.at("labels").get<std::vector<std::string>>();
    const auto n = labels.size();
    std::vector<Simplex> simplices;
    for (const auto& s : doc.at("maximal")) {
      auto simplex = s.get<Simplex>();
      for (auto v : simplex) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) fail(ErrorKind::Schema, "vertex out of range");
      }
      simplices.push_back(std::move(simplex));
    }
    SimplicialComplex k(std::move(labels), simplices);
    if (doc.contains("action")) {
      if (!window || doc.at("window_size").get<std::size_t>() != window->size()) {
        fail(ErrorKind::Schema, "complex action does not match the window");
      }
      auto action = doc.at("action").get<std::vector<Vertex>>();
      if (action.size() != window->size() * n) fail(ErrorKind::Schema, "complex action has the wrong size");
      k.set_action(window, std::move(action));
    }
    return k;
  });
}

Json l1_json(const L1Point& p) {
  Json out = Json::object();
  for (const auto& [v, c] : p) out[std::to_string(v)] = rational_json(c);
  return out;
}

L1Point l1_from_json(const Json& j) {
  return guarded("point", [&] {
    L1Point p;
    for (const auto& [key, value] : j.items()) {
      std::size_t used = 0;
      const int v = std::stoi(key, &used);
      if (used != key.size() || v < 0) fail(ErrorKind::Schema, "bad vertex key " + key);
      p[v] = rational_from_json(value);
    }
    return p;
  });
}

Json eqmap_doc(const EquivariantMap& phi) {
  Json values = Json::array();
  const auto& d = phi.domain;
  for (auto p = d.find_first(); p != Subset::npos; p = d.find_next(p)) values.push_back({p, l1_json(phi.table[p])});
  return {{"schema", schema_name("eqmap")},
          {"form", "phi"},
          {"mode", to_string(phi.ground->mode())},
          {"n_points", phi.ground->n_points()},
          {"window_size", phi.ground->window()->size()},
          {"dimension", phi.dimension},
          {"measured_constant", rational_json(phi.measured_constant)},
          {"certified_bound", rational_json(phi.certified_bound)},
          {"complex", complex_doc(phi.complex)},
          {"values", std::move(values)}};
}

EquivariantMap eqmap_from_doc(const Json& doc, const GroundPtr& ground) {
  expect_schema(doc, "eqmap");
  return guarded("eqmap", [&] {
    if (doc.at("form").get<std::string>() != "phi") fail(ErrorKind::Schema, "expected a map on Window x Points");
    if (parse_action_mode(doc.at("mode").get<std::string>()) != ground->mode() ||
        doc.at("n_points").get<std::size_t>() != ground->n_points() ||
        doc.at("window_size").get<std::size_t>() != ground->window()->size()) {
      fail(ErrorKind::Schema, "map does not match the ground set");
    }
    EquivariantMap phi;
    phi.ground = ground;
    phi.domain = ground->empty();
    phi.table.assign(ground->size(), {});
    phi.complex = complex_from_doc(doc.at("complex"), ground->window());
    phi.dimension = doc.at("dimension").get<int>();
    phi.measured_constant = rational_from_json(doc.at("measured_constant"));
    phi.certified_bound = rational_from_json(doc.at("certified_bound"));
    for (const auto& entry : doc.at("values")) {
      auto p = entry.at(0).get<std::size_t>();
      if (p >= ground->size()) fail(ErrorKind::Schema, "ground index out of range");
      phi.domain.set(p);
      phi.table[p] = l1_from_json(entry.at(1));
    }
    return phi;
  });
}

Json psi_doc(const AlmostEquivariantMap& psi) {
  Json values = Json::array();
  for (const auto& p : psi.table) values.push_back(l1_json(p));
  return {{"schema", schema_name("eqmap")},
          {"form", "psi"},
          {"n_points", psi.n_points},
          {"measured_defect", rational_json(psi.measured_defect)},
          {"defect_coverage", rational_json(psi.defect_coverage)},
          {"complex", complex_doc(psi.complex)},
          {"values", std::move(values)}};
}

AlmostEquivariantMap psi_from_doc(const Json& doc, const WindowPtr& window) {
  expect_schema(doc, "eqmap");
  return guarded("eqmap", [&] {
    if (doc.at("form").get<std::string>() != "psi") fail(ErrorKind::Schema, "expected a map on Points");
    AlmostEquivariantMap psi;
    psi.n_points = doc.at("n_points").get<std::size_t>();
    psi.complex = complex_from_doc(doc.at("complex"), window);
    psi.measured_defect = rational_from_json(doc.at("measured_defect"));
    if (doc.contains("defect_coverage")) psi.defect_coverage = rational_from_json(doc.at("defect_coverage"));
    for (const auto& v : doc.at("values")) psi.table.push_back(l1_from_json(v));
    if (psi.table.size() != psi.n_points) fail(ErrorKind::Schema, "map has the wrong number of values");
    return psi;
  });
}

std::string canonical_dump(const Json& doc) { return doc.dump(); }

}  // namespace ccw

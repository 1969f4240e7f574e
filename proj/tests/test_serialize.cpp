#include "ccw/error.hpp"
#include "ccw/generators.hpp"
#include "ccw/serialize.hpp"
#include "support.hpp"

#include <doctest.h>

#include <functional>

using namespace ccw;
using namespace ccw::testing;

namespace {

constexpr std::size_t kCap = 1000000;

void check_schema_error(const std::function<void()>& f) {
  try {
    f();
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Schema);
  }
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(rational_json(Rational(3, 4)) == "3/4");
  CHECK(rational_json(Rational(-2)) == "-2");
  CHECK(rational_from_json(Json("5/10")) == Rational(1, 2));
  CHECK(rational_from_json(Json(7)) == 7);
  check_schema_error([] { rational_from_json(Json("x")); });
  check_schema_error([] { rational_from_json(Json("1/0")); });
}

TEST_CASE("windows round trip for every group kind") {
  std::vector<WindowPtr> windows{z_window(3), zn_window(2, 2), f_window(2, 2),
                                 GroupWindow::build(FiniteGroup::cyclic(4), 2)};
  windows.push_back(GroupWindow::build(std::make_shared<ProductGroup>(std::vector<std::shared_ptr<const Group>>{make_free_abelian(1), FiniteGroup::cyclic(2)}), 2));
  for (const auto& w : windows) {
    auto doc = window_doc(*w);
    auto back = window_from_doc(Json::parse(canonical_dump(doc)), kCap);
    REQUIRE(back->size() == w->size());
    for (Index g = 0; g < static_cast<Index>(w->size()); ++g) CHECK(back->format(g) == w->format(g));
    CHECK(canonical_dump(window_doc(*back)) == canonical_dump(doc));
  }
  check_schema_error([] { window_from_doc(Json{{"schema", "other/v1/window"}}, kCap); });
  auto doc = window_doc(*z_window(50));
  try {
    window_from_doc(doc, 10);
    FAIL("expected the size cap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCap);
  }
}

TEST_CASE("spaces round trip") {
  for (const auto& model : {make_interval_compactification(z_window(3)), make_tree_boundary_model(f_window(2, 2), 3),
                            make_cyclic_model(z_window(3), 4)}) {
    auto doc = space_doc(model);
    auto back = model_from_doc(Json::parse(canonical_dump(doc)), kCap);
    CHECK(back.space.size() == model.space.size());
    CHECK(back.boundary == model.boundary);
    CHECK(canonical_dump(space_doc(back)) == canonical_dump(doc));
  }
  auto doc = space_doc(make_cyclic_model(z_window(2), 3));
  doc["distances"][0][1] = "5";
  CHECK_THROWS_AS(model_from_doc(doc, kCap), Error);
}

TEST_CASE("covers round trip and reject mismatched grounds") {
  auto model = make_tree_boundary_model(f_window(2, 2), 2);
  auto ground = ground_for(model, ActionMode::Translation);
  auto cover = make_random_disjoint_cover(ground, 9, {3, 0.0});
  auto doc = cover_doc(cover);
  CHECK(cover_mode(doc) == ActionMode::Translation);
  auto back = cover_from_doc(Json::parse(canonical_dump(doc)), ground);
  CHECK(back.members == cover.members);
  auto diagonal = ground_for(model, ActionMode::Diagonal);
  check_schema_error([&] { cover_from_doc(doc, diagonal); });
  doc["members"][0].push_back(ground->size() + 3);
  check_schema_error([&] { cover_from_doc(doc, ground); });
}

TEST_CASE("homotopy actions round trip") {
  auto ha = make_perturbed_interval_homotopy(z_window(4), 3, 5);
  auto doc = homotopy_doc(ha);
  auto back = homotopy_from_doc(Json::parse(canonical_dump(doc)), kCap);
  CHECK(back.S == ha.S);
  CHECK(back.phi == ha.phi);
  CHECK(back.H == ha.H);
  CHECK(back.time_grid == ha.time_grid);
  CHECK(canonical_dump(homotopy_doc(back)) == canonical_dump(doc));
}

TEST_CASE("complexes and maps round trip") {
  auto w = z_window(8);
  auto ha = make_perturbed_interval_homotopy(w, 4, 2);
  AdbEngine engine(ha);
  auto bricks = make_brick_cover(engine.ground_ptr(), 12, 2);
  auto phi = cover_to_map(bricks, engine, 2);
  auto doc = eqmap_doc(phi);
  auto back = eqmap_from_doc(Json::parse(canonical_dump(doc)), engine.ground_ptr());
  CHECK(back.domain == phi.domain);
  CHECK(back.table == phi.table);
  CHECK(back.measured_constant == phi.measured_constant);
  CHECK(back.complex.maximal_simplices() == phi.complex.maximal_simplices());
  CHECK(canonical_dump(eqmap_doc(back)) == canonical_dump(doc));

  auto kdoc = complex_doc(phi.complex);
  auto k = complex_from_doc(kdoc, w);
  CHECK(k.labels() == phi.complex.labels());
  CHECK(k.vertex_action() == phi.complex.vertex_action());

  L1Point p{{0, Rational(1, 3)}, {4, Rational(2, 3)}};
  CHECK(l1_from_json(l1_json(p)) == p);
}

TEST_CASE("psi documents round trip") {
  auto w = z_window(10);
  auto model = make_cyclic_model(w, 5);
  AdbEngine engine(genuine_to_homotopy(model.action, standard_generating_set(*w)));
  auto phi = cover_to_map(make_whole_cover(engine.ground_ptr()), engine, 2);
  auto psi = phi_to_psi(phi, engine);
  auto doc = psi_doc(psi);
  auto back = psi_from_doc(Json::parse(canonical_dump(doc)), w);
  CHECK(back.n_points == psi.n_points);
  CHECK(back.table == psi.table);
  CHECK(canonical_dump(psi_doc(back)) == canonical_dump(doc));
  check_schema_error([&] { eqmap_from_doc(doc, engine.ground_ptr()); });
}

TEST_CASE("malformed documents raise schema errors") {
  check_schema_error([] { schema_kind(Json::object()); });
  check_schema_error([] { window_from_doc(Json{{"schema", "ccw/v1/window"}}, kCap); });
  check_schema_error([] { cover_from_doc(Json{{"schema", "ccw/v1/cover"}, {"mode", 3}}, nullptr); });
  CHECK(schema_name("cover") == "ccw/v1/cover");
}

#pragma once

#include "ccw/characterisations.hpp"
#include "ccw/complex.hpp"
#include "ccw/cover.hpp"
#include "ccw/homotopy.hpp"
#include "ccw/space.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace ccw {

using Json = nlohmann::json;

/// "ccw/v1/<kind>".
std::string schema_name(std::string_view kind);
/// Throws Schema unless doc["schema"] names `kind`.
void expect_schema(const Json& doc, std::string_view kind);
/// Kind part of doc["schema"]; throws Schema when missing or foreign.
std::string schema_kind(const Json& doc);

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json group_json(const Group& group);
std::shared_ptr<const Group> group_from_json(const Json& j);

Json window_doc(const GroupWindow& window);
WindowPtr window_from_doc(const Json& doc, std::size_t max_elements);

/// Points, distances, boundary flags and the action table, with the window embedded.
Json space_doc(const CompactificationModel& model);
/// Rebuilds and validates the model; the window is rebuilt from the embedded document.
CompactificationModel model_from_doc(const Json& doc, std::size_t max_elements);

Json subset_json(const Subset& s);
Subset subset_from_json(const Json& j, const GroundSet& ground);

Json cover_doc(const CoverFamily& cover);
ActionMode cover_mode(const Json& doc);
/// Members are read against `ground`, whose mode and size must match the document.
CoverFamily cover_from_doc(const Json& doc, const GroundPtr& ground);

Json homotopy_doc(const HomotopyAction& ha);
HomotopyAction homotopy_from_doc(const Json& doc, std::size_t max_elements);

Json complex_doc(const SimplicialComplex& k);
SimplicialComplex complex_from_doc(const Json& doc, const WindowPtr& window);

Json l1_json(const L1Point& p);
L1Point l1_from_json(const Json& j);

Json eqmap_doc(const EquivariantMap& phi);
EquivariantMap eqmap_from_doc(const Json& doc, const GroundPtr& ground);

Json psi_doc(const AlmostEquivariantMap& psi);
AlmostEquivariantMap psi_from_doc(const Json& doc, const WindowPtr& window);

/// Compact dump with sorted keys; the byte form used for hashing.
std::string canonical_dump(const Json& doc);

}  // namespace ccw

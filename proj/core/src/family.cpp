#include "ccw/family.hpp"

#include "ccw/error.hpp"

#include <algorithm>

namespace ccw {

SubgroupVerdict FamilyPredicate::contains(const Group& group, std::span<const Word> generators) const {
  switch (kind) {
    case FamilyKind::Trivial:
      return {std::all_of(generators.begin(), generators.end(), [&](const Word& g) { return group.is_identity(g); }),
              true};
    case FamilyKind::Finite:
      return group.is_finite_subgroup(generators);
    case FamilyKind::VirtuallyCyclic:
      return group.is_virtually_cyclic_subgroup(generators);
    case FamilyKind::All:
      return {true, true};
  }
  return {false, false};
}

std::string FamilyPredicate::name() const {
  switch (kind) {
    case FamilyKind::Trivial: return "trivial";
    case FamilyKind::Finite: return "fin";
    case FamilyKind::VirtuallyCyclic: return "vcyc";
    case FamilyKind::All: return "all";
  }
  return "?";
}

FamilyPredicate FamilyPredicate::parse(std::string_view text) {
  if (text == "trivial") return {FamilyKind::Trivial};
  if (text == "fin" || text == "finite") return {FamilyKind::Finite};
  if (text == "vcyc") return {FamilyKind::VirtuallyCyclic};
  if (text == "all") return {FamilyKind::All};
  fail(ErrorKind::InvalidArgument, "unknown family '" + std::string(text) + "' (trivial|fin|vcyc|all)");
}

}  // namespace ccw

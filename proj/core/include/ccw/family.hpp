#pragma once

#include "ccw/group.hpp"

#include <span>
#include <string>
#include <string_view>

namespace ccw {

enum class FamilyKind { Trivial, Finite, VirtuallyCyclic, All };

/// A family of subgroups, decided on finite generator lists.
struct FamilyPredicate {
  FamilyKind kind = FamilyKind::VirtuallyCyclic;

  SubgroupVerdict contains(const Group& group, std::span<const Word> generators) const;
  /// Closed under finite-index overgroups.
  bool virtually_closed() const { return kind != FamilyKind::Trivial; }
  std::string name() const;
  static FamilyPredicate parse(std::string_view text);
};

}  // namespace ccw

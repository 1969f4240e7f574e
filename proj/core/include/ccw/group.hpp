#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccw {

/// Canonical normal form of a group element.
///
/// The encoding depends on the group kind:
///   free abelian Z^n : the n coordinates
///   free F_k         : reduced word, letter +(i+1) for generator i, -(i+1) for its inverse
///   finite (table)   : a single table index
///   product          : factor words, each prefixed by its length
using Word = std::vector<std::int32_t>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

enum class GroupKind { FreeAbelian, Free, Finite, Product };

/// Outcome of a subgroup decision procedure. `exact` is false when the
/// procedure fell back to a conservative answer (documented per group kind).
struct SubgroupVerdict {
  bool holds = false;
  bool exact = true;
};

/// A finitely generated group with a fixed symmetric generating set and the
/// associated word-length metric.
class Group {
 public:
  virtual ~Group() = default;

  virtual GroupKind kind() const = 0;
  virtual std::string name() const = 0;

  virtual Word identity() const = 0;
  virtual Word multiply(const Word& a, const Word& b) const = 0;
  virtual Word inverse(const Word& a) const = 0;
  virtual int word_length(const Word& a) const = 0;

  /// Symmetric generating set, identity excluded.
  virtual std::vector<Word> generators() const = 0;

  virtual std::string format(const Word& a) const = 0;
  virtual Word parse(std::string_view text) const = 0;

  virtual SubgroupVerdict is_finite_subgroup(std::span<const Word> gens) const = 0;
  virtual SubgroupVerdict is_virtually_cyclic_subgroup(std::span<const Word> gens) const = 0;

  bool is_identity(const Word& a) const { return a == identity(); }
  bool commute(const Word& a, const Word& b) const {
    return multiply(a, b) == multiply(b, a);
  }
};

class FreeAbelianGroup final : public Group {
 public:
  explicit FreeAbelianGroup(int rank);

  int rank() const { return rank_; }

  GroupKind kind() const override { return GroupKind::FreeAbelian; }
  std::string name() const override;
  Word identity() const override;
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  int word_length(const Word& a) const override;
  std::vector<Word> generators() const override;
  std::string format(const Word& a) const override;
  Word parse(std::string_view text) const override;
  SubgroupVerdict is_finite_subgroup(std::span<const Word> gens) const override;
  SubgroupVerdict is_virtually_cyclic_subgroup(std::span<const Word> gens) const override;

  /// Rank of the sublattice spanned by `gens`.
  int lattice_rank(std::span<const Word> gens) const;

 private:
  int rank_;
};

class FreeGroup final : public Group {
 public:
  explicit FreeGroup(int rank);

  int rank() const { return rank_; }

  GroupKind kind() const override { return GroupKind::Free; }
  std::string name() const override;
  Word identity() const override { return {}; }
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  int word_length(const Word& a) const override { return static_cast<int>(a.size()); }
  std::vector<Word> generators() const override;
  std::string format(const Word& a) const override;
  Word parse(std::string_view text) const override;
  SubgroupVerdict is_finite_subgroup(std::span<const Word> gens) const override;
  // Pairwise commuting, i.e. all generators are powers of a common root.
  SubgroupVerdict is_virtually_cyclic_subgroup(std::span<const Word> gens) const override;

 private:
  int rank_;
};

/// Finite group given by a Cayley table over {0..n-1} and a generator list.
class FiniteGroup final : public Group {
 public:
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators);

  /// Cyclic group Z/n with generator 1.
  static std::shared_ptr<const FiniteGroup> cyclic(int n);

  int order() const { return static_cast<int>(table_.size()); }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<int>& generator_indices() const { return gens_; }

  GroupKind kind() const override { return GroupKind::Finite; }
  std::string name() const override;
  Word identity() const override { return {identity_}; }
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  int word_length(const Word& a) const override;
  std::vector<Word> generators() const override;
  std::string format(const Word& a) const override;
  Word parse(std::string_view text) const override;
  SubgroupVerdict is_finite_subgroup(std::span<const Word>) const override { return {true, true}; }
  SubgroupVerdict is_virtually_cyclic_subgroup(std::span<const Word>) const override {
    return {true, true};
  }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> gens_;
  std::vector<int> inverse_;
  std::vector<int> length_;
  int identity_ = 0;
};

/// Direct product. Subgroup predicates are exact when the free factors'
/// projections vanish or only one factor carries an infinite projection.
class ProductGroup final : public Group {
 public:
  explicit ProductGroup(std::vector<std::shared_ptr<const Group>> factors);

  const std::vector<std::shared_ptr<const Group>>& factors() const { return factors_; }

  GroupKind kind() const override { return GroupKind::Product; }
  std::string name() const override;
  Word identity() const override;
  Word multiply(const Word& a, const Word& b) const override;
  Word inverse(const Word& a) const override;
  int word_length(const Word& a) const override;
  std::vector<Word> generators() const override;
  std::string format(const Word& a) const override;
  Word parse(std::string_view text) const override;
  SubgroupVerdict is_finite_subgroup(std::span<const Word> gens) const override;
  SubgroupVerdict is_virtually_cyclic_subgroup(std::span<const Word> gens) const override;

  std::vector<Word> split(const Word& a) const;
  Word join(const std::vector<Word>& parts) const;

 private:
  std::vector<std::shared_ptr<const Group>> factors_;
};

std::shared_ptr<const Group> make_free_abelian(int rank);
std::shared_ptr<const Group> make_free(int rank);

}  // namespace ccw

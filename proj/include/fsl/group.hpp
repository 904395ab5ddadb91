#pragma once

// Finitely generated abelian groups presented as products of cyclic factors.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fsl {

/// Element of a product of cyclic groups, stored in reduced form.
struct GroupElement {
  std::vector<std::int64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& g);

/// Product of cyclic factors. An order of 0 denotes an infinite cyclic factor.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::int64_t> orders);

  std::span<const std::int64_t> orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  bool is_finite() const;
  /// Product of the factor orders; empty when some factor is infinite.
  std::optional<std::uint64_t> order() const;
  std::string describe() const;

  GroupElement identity() const;
  GroupElement generator(std::size_t i) const;
  GroupElement mul(const GroupElement& g, const GroupElement& h) const;
  GroupElement inv(const GroupElement& g) const;
  GroupElement pow(const GroupElement& g, std::int64_t n) const;
  /// Reduces arbitrary integer coordinates into canonical form.
  GroupElement reduce(std::vector<std::int64_t> coords) const;
  /// True when `g` has the right length and is already reduced.
  bool contains(const GroupElement& g) const;
  /// Additive order of `g`; 0 when `g` has infinite order.
  std::uint64_t element_order(const GroupElement& g) const;

  // Dense indexing of a finite group; index order equals lexicographic order.
  std::size_t index_of(const GroupElement& g) const;
  GroupElement element_at(std::size_t index) const;
  std::vector<GroupElement> elements() const;

  bool operator==(const GroupSpec&) const = default;

 private:
  void require_finite(const char* what) const;
  void check_arity(const GroupElement& g) const;

  std::vector<std::int64_t> orders_;
};

GroupSpec make_group(std::vector<std::int64_t> orders);

/// Subgroup of a finite group, stored as its sorted element set.
class Subgroup {
 public:
  /// Closure of `gens` under the group operation.
  static Subgroup generated_by(const GroupSpec& parent, std::span<const GroupElement> gens);
  /// Validates that `elements` is closed; throws NotASubgroupError otherwise.
  static Subgroup from_elements(const GroupSpec& parent, std::vector<GroupElement> elements);
  static Subgroup trivial(const GroupSpec& parent);
  static Subgroup full(const GroupSpec& parent);

  const GroupSpec& parent() const { return parent_; }
  std::span<const GroupElement> elements() const { return elements_; }
  /// Irredundant generating sequence picked greedily in element order.
  std::span<const GroupElement> generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const;
  bool contains(const GroupElement& g) const;
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_full() const;

  bool operator==(const Subgroup& other) const {
    return parent_ == other.parent_ && elements_ == other.elements_;
  }
  /// Canonical order: by order, then by sorted element list.
  bool operator<(const Subgroup& other) const;

 private:
  Subgroup(GroupSpec parent, std::vector<GroupElement> sorted_elements);

  GroupSpec parent_;
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> generators_;
};

/// All subgroups of a finite group, sorted canonically.
std::vector<Subgroup> subgroups(const GroupSpec& group);

/// Cosets gH of `sub`, each sorted, ordered by their least member.
std::vector<std::vector<GroupElement>> cosets(const GroupSpec& group, const Subgroup& sub);

/// One representative per coset of `subgroup`, in coset order.
class Transversal {
 public:
  /// Validates that `reps` meets every coset exactly once.
  Transversal(Subgroup subgroup, std::vector<GroupElement> reps);

  const Subgroup& subgroup() const { return subgroup_; }
  std::span<const GroupElement> reps() const { return reps_; }
  std::size_t size() const { return reps_.size(); }
  /// Position in `reps()` of the representative of the coset g·K.
  std::size_t rep_index_of(const GroupElement& g) const;
  bool is_normalized() const;

 private:
  Subgroup subgroup_;
  std::vector<GroupElement> reps_;
  std::vector<std::size_t> rep_of_element_;  // indexed by parent element index
};

/// Normalized: the identity represents K, every other coset its least member.
/// Otherwise every coset is represented by its greatest member.
Transversal transversal(const GroupSpec& group, const Subgroup& sub, bool normalized = true);

/// Decomposition of a finite abelian group into independent cyclic factors.
struct CyclicBasis {
  GroupSpec type;                        // orders of the factors
  std::vector<GroupElement> generators;  // one per factor, in the ambient group
};

/// Finds g1..gr in `sub` with <g1..gr> = sub and |sub| = ord(g1)···ord(gr).
CyclicBasis cyclic_basis(const Subgroup& sub);

/// Homomorphism from `domain` into `codomain` fixed by generator images.
class GroupHom {
 public:
  /// Throws ShapeError when some image order does not divide its factor order.
  GroupHom(GroupSpec domain, GroupSpec codomain, std::vector<GroupElement> images);

  const GroupSpec& domain() const { return domain_; }
  const GroupSpec& codomain() const { return codomain_; }
  std::span<const GroupElement> images() const { return images_; }
  GroupElement operator()(const GroupElement& x) const;

 private:
  GroupSpec domain_;
  GroupSpec codomain_;
  std::vector<GroupElement> images_;
};

}  // namespace fsl

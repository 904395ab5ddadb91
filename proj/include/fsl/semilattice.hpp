#pragma once

// Finite semilattices with an abelian group acting by automorphisms.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsl/group.hpp"
#include "fsl/term.hpp"

namespace fsl {

using Index = std::size_t;
using Permutation = std::vector<Index>;

/// A finite F-semilattice: carrier labels, meet table, and one carrier
/// permutation per generator of the group.
///
/// Construction checks shapes only (square table, entries in range, one
/// permutation of the right length per generator). Use validate_axioms()
/// before relying on the algebraic laws.
class FSemilattice {
 public:
  FSemilattice(GroupSpec group, std::vector<std::string> labels, std::vector<std::vector<Index>> meet,
               std::vector<Permutation> action);

  const GroupSpec& group() const { return group_; }
  std::size_t size() const { return labels_.size(); }
  std::span<const std::string> labels() const { return labels_; }
  const std::string& label(Index x) const { return labels_.at(x); }
  std::optional<Index> find_label(std::string_view label) const;

  Index meet(Index x, Index y) const { return meet_[x * size() + y]; }
  std::vector<std::vector<Index>> meet_table() const;
  std::span<const Permutation> action() const { return action_; }

  /// Image of x under generator i (or its inverse).
  Index gen(std::size_t i, Index x) const { return action_[i][x]; }
  Index gen_inv(std::size_t i, Index x) const { return inverse_[i][x]; }
  /// Order of the permutation of generator i, as a carrier map.
  std::size_t gen_order(std::size_t i) const { return perm_order_[i]; }
  /// Action of an arbitrary group element; exponents act modulo gen_order.
  Index act(const GroupElement& g, Index x) const;

  bool operator==(const FSemilattice&) const = default;

 private:
  GroupSpec group_;
  std::vector<std::string> labels_;
  std::vector<Index> meet_;  // row-major
  std::vector<Permutation> action_;
  std::vector<Permutation> inverse_;
  std::vector<std::size_t> perm_order_;
};

/// Outcome of an axiom check. `axiom` is empty when the algebra is valid.
struct ValidationReport {
  bool valid = true;
  std::string axiom;             // e.g. "associativity", "automorphism"
  std::string message;
  std::vector<Index> witness;    // carrier elements exhibiting the failure
  std::optional<std::size_t> generator;
};

/// Checks the F-semilattice laws, reporting the first violation with a witness.
ValidationReport validate_axioms(const FSemilattice& a);
/// Throws PreconditionError unless validate_axioms passes.
void require_valid(const FSemilattice& a);

Index zero(const FSemilattice& a);
bool leq(const FSemilattice& a, Index x, Index y);
/// Elements covering the zero.
std::vector<Index> atoms(const FSemilattice& a);
std::vector<Index> maximal_elements(const FSemilattice& a);
/// Hasse edges (lower, upper) sorted lexicographically.
std::vector<std::pair<Index, Index>> cover_edges(const FSemilattice& a);

/// Smallest subset containing `seeds` closed under meet and the action.
std::vector<Index> closure(const FSemilattice& a, std::span<const Index> seeds);

struct Subalgebra {
  FSemilattice algebra;
  std::vector<Index> embedding;  // subalgebra index -> parent index, increasing

  /// Subalgebra index of a parent element, if it belongs to the subalgebra.
  std::optional<Index> local_index(Index parent) const;
};

Subalgebra subalgebra_generated(const FSemilattice& a, Index b);
bool generates(const FSemilattice& a, Index x);

/// Algebra on the given subset, which must be closed.
Subalgebra induced_subalgebra(const FSemilattice& a, std::vector<Index> elements);

struct Homomorphism {
  std::vector<Index> map;

  bool injective() const;
  bool surjective(std::size_t target_size) const;
};

/// Checks that `map` preserves meet and every generator action.
bool is_homomorphism(const FSemilattice& source, const FSemilattice& target, std::span<const Index> map);
bool is_isomorphism(const FSemilattice& source, const FSemilattice& target, std::span<const Index> map);

/// Result of extending a ↦ b. Exactly one of `hom` and `conflict` is set.
struct HomExtension {
  std::optional<Homomorphism> hom;
  /// Unary terms s, t with s(a) = t(a) but s(b) != t(b).
  std::optional<std::pair<Term, Term>> conflict;
};

/// The canonical map s(a) ↦ s(b). Requires that `a` generates `source` and
/// both algebras share a group.
HomExtension hom_extend(const FSemilattice& source, Index a, const FSemilattice& target, Index b);

/// Isomorphism source ≅ target sending a ↦ b, if one exists.
std::optional<Homomorphism> is_isomorphic_1gen(const FSemilattice& source, Index a, const FSemilattice& target,
                                               Index b);

/// Same semilattice, every group element acting by its inverse.
FSemilattice opposite(const FSemilattice& a);

/// Algebra over `new_group` whose generators act as the images under `phi`.
FSemilattice change_of_groups(const FSemilattice& a, const GroupHom& phi);

/// Partition of the carrier; block_of[x] numbers blocks by first occurrence.
struct Congruence {
  std::vector<std::size_t> block_of;

  std::size_t block_count() const;
  std::vector<std::vector<Index>> blocks() const;
  bool is_identity() const { return block_count() == block_of.size(); }
  bool is_total() const { return block_count() == 1; }
  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence&) const = default;
};

/// Canonical renumbering of an arbitrary block assignment.
Congruence make_congruence(std::span<const std::size_t> block_of);
bool is_congruence(const FSemilattice& a, const Congruence& c);
/// Least congruence identifying x and y.
Congruence principal_congruence(const FSemilattice& a, Index x, Index y);

inline constexpr std::size_t kDefaultCongruenceLimit = 24;

/// All congruences as joins of principal ones: identity first, total last,
/// otherwise by decreasing number of blocks then block assignment.
std::vector<Congruence> congruences(const FSemilattice& a, std::size_t limit = kDefaultCongruenceLimit);
FSemilattice quotient(const FSemilattice& a, const Congruence& c);

}  // namespace fsl

#pragma once

// Model checking of quasi-identities and the minimality machinery for
// 1-generated F-semilattices.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsl/constructions.hpp"
#include "fsl/semilattice.hpp"
#include "fsl/term.hpp"

namespace fsl {

/// Value of `t` under `valuation` (variable index -> carrier element).
Index eval_term(const FSemilattice& a, const Term& t, std::span<const Index> valuation);

struct QuasiIdentityResult {
  bool holds = true;
  /// First failing valuation in lexicographic order, first variable most
  /// significant.
  std::optional<std::vector<Index>> counterexample;
};

/// Exhaustive check over all valuations of the declared variables.
QuasiIdentityResult holds_quasi_identity(const FSemilattice& a, const QuasiIdentity& qi);

/// s(x) ≈ t(x) → x ≈ x ∧ y for the first term pair (in canonical order) that
/// separates at `a`. Terms are enumerated by size, then lexicographically over
/// the shifts of the finite action image; pairs by larger index, then smaller.
/// Requires A nontrivial, generated by a, and minimal (see is_minimal_free).
QuasiIdentity separating_quasi_identity(const FSemilattice& a, Index generator);

struct MinimalityVerdict {
  bool minimal = true;
  /// Nonzero element whose generated subalgebra is not isomorphic to A.
  std::optional<Index> counterexample;
};

/// Whether every nonzero element generates a copy of A (a ↦ b extends to an
/// isomorphism). Requires A nontrivial and generated by `generator`.
MinimalityVerdict is_minimal_free(const FSemilattice& a, Index generator);

/// {g ∈ F : g(x) = x}. Needs a finite group.
Subgroup stabilizer(const FSemilattice& a, Index x);

/// Stabilizer computed inside the finite permutation group generated by the
/// generator actions; this is the image of the true stabilizer.
struct ImageStabilizer {
  std::size_t image_order = 0;
  /// Exponent vectors (each reduced modulo the generator's permutation order),
  /// one representative per stabilizing permutation, sorted.
  std::vector<GroupElement> elements;

  std::size_t order() const { return elements.size(); }
};

ImageStabilizer stabilizer_image(const FSemilattice& a, Index x);

struct SubgroupCheck {
  Subgroup subgroup;
  std::size_t carrier_size = 0;
  /// Empty for H = F, where the representative is the two-element algebra.
  std::optional<bool> minimal;
  bool stabilizer_round_trip = false;
};

struct BijectionReport {
  std::vector<SubgroupCheck> subgroups;
  std::size_t representatives = 0;
  bool pairwise_distinct = true;
  /// Pair of subgroup positions whose Maróti algebras turned out isomorphic.
  std::optional<std::pair<std::size_t, std::size_t>> isomorphic_pair;
  bool ok = false;

  std::string summary() const;
};

/// For every H ≤ F: Maróti(F,H) is minimal when H is proper, the stabilizer
/// of the atom H is H again, and distinct subgroups give non-isomorphic
/// algebras.
BijectionReport verify_bijection(const GroupSpec& group);

struct DecompositionResult {
  Subgroup k;
  SubgroupAlgebra u;
  std::vector<Index> u_embedding;   // U's carrier inside A
  FSemilattice reconstruction;      // twisted multiple of U over the normalized transversal
  std::vector<Index> isomorphism;   // reconstruction -> A, ⟨u,t⟩ ↦ t(u)
  std::size_t block_bound = 0;
  std::size_t block_checks = 0;
};

inline constexpr std::size_t kDefaultBlockBound = 3;

/// K = {g : a ∧ g(a) ≠ o}, U the K-subalgebra generated by a, and the
/// isomorphism from the twisted multiple back to A. The coset condition on
/// meets of translates is checked for up to `block_bound` translates.
DecompositionResult decompose_ku(const FSemilattice& a, Index generator,
                                 std::size_t block_bound = kDefaultBlockBound);

struct DeltaResult {
  FSemilattice algebra;
  Index generator = 0;  // ⟨a, 1⟩
};

/// The twisted multiple of U over K with the normalized transversal,
/// verified minimal. `u_generator` must generate U.
DeltaResult delta_map(const Subgroup& k, const SubgroupAlgebra& u, Index u_generator = 0);

struct QuotientCheck {
  Congruence congruence;
  bool separating_fails = false;
  std::optional<std::vector<Index>> counterexample;
};

struct SimplicityReport {
  std::size_t congruence_count = 0;
  bool simple = false;
  QuasiIdentity separating;
  std::vector<QuotientCheck> quotients;  // one per congruence other than Δ, ∇
};

SimplicityReport simplicity_and_quotient_report(const FSemilattice& a, Index generator,
                                                std::size_t limit = kDefaultCongruenceLimit);

}  // namespace fsl

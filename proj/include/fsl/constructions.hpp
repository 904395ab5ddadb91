#pragma once

// Concrete F-semilattices: Maróti semilattices, twisted multiples, A_k and
// the two-element algebra.

#include <vector>

#include "fsl/group.hpp"
#include "fsl/semilattice.hpp"

namespace fsl {

/// Cosets of `sub` as atoms over a zero, with F translating the cosets.
/// Index 0 is the zero "o"; atoms follow, labeled by their least member.
FSemilattice maroti(const GroupSpec& group, const Subgroup& sub);

/// A semilattice acted on by a subgroup K of F.
///
/// The algebra carries its own group G_U; `generator_images` sends the i-th
/// generator of G_U into K and must induce an isomorphism G_U ≅ K.
struct SubgroupAlgebra {
  FSemilattice algebra;
  std::vector<GroupElement> generator_images;
};

/// Carrier permutation of U for every element of K, indexed by the element's
/// position in K. Throws PreconditionError unless G_U ≅ K via the images.
std::vector<Permutation> subgroup_action_table(const Subgroup& k, const SubgroupAlgebra& u);

/// One-element and two-element-chain K-semilattices with trivial action,
/// presented over a cyclic basis of K.
SubgroupAlgebra one_element_over(const Subgroup& k);
SubgroupAlgebra chain2_over(const Subgroup& k);

struct TwistedSpec {
  Transversal transversal;  // carries the subgroup K and the group F
  SubgroupAlgebra u;
};

/// o together with U × T, distinct copies meeting in o, and g acting by
/// g⟨u,t⟩ = ⟨(g t f⁻¹)(u), f⟩ where f is the representative of g t K.
/// Index 0 is o; ⟨u,t⟩ sits at 1 + t_index·|U| + u and is labeled "u@t".
FSemilattice twisted_multiple(const TwistedSpec& spec);

/// Position of ⟨u, t⟩ in twisted_multiple's carrier.
inline Index twisted_index(std::size_t u_size, std::size_t t_index, Index u) { return 1 + t_index * u_size + u; }

/// k atoms cycled by the single generator of C_∞, over a zero at index 0.
FSemilattice a_k(int k);

/// The chain 0 < 1 with trivial action.
FSemilattice two_element(const GroupSpec& group);

/// Builds the algebra with T1 and with T2 and returns the explicit map
/// o ↦ o, ⟨u,t⟩ ↦ ⟨t'⁻¹t(u), t'⟩. Throws VerificationError if the map is not
/// an isomorphism.
Homomorphism transversal_independence_check(const Transversal& t1, const Transversal& t2,
                                            const SubgroupAlgebra& u);

}  // namespace fsl

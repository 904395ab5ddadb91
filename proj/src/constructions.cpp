#include "fsl/constructions.hpp"

#include <algorithm>

#include "fsl/errors.hpp"

namespace fsl {

namespace {

std::size_t position_in(const Subgroup& k, const GroupElement& g) {
  const auto els = k.elements();
  auto it = std::lower_bound(els.begin(), els.end(), g);
  if (it == els.end() || *it != g) throw VerificationError("element " + to_string(g) + " is not in the subgroup");
  return static_cast<std::size_t>(it - els.begin());
}

SubgroupAlgebra trivially_acted(const Subgroup& k, std::vector<std::string> labels,
                                std::vector<std::vector<Index>> meet) {
  auto basis = cyclic_basis(k);
  const auto n = labels.size();
  Permutation id(n);
  for (Index x = 0; x < n; ++x) id[x] = x;
  std::vector<Permutation> action(basis.type.rank(), id);
  return SubgroupAlgebra{FSemilattice(basis.type, std::move(labels), std::move(meet), std::move(action)),
                         std::move(basis.generators)};
}

}  // namespace

FSemilattice maroti(const GroupSpec& group, const Subgroup& sub) {
  const auto blocks = cosets(group, sub);
  const auto n = blocks.size() + 1;
  std::vector<std::string> labels{"o"};
  for (const auto& b : blocks) labels.push_back(to_string(b.front()));
  std::vector<std::vector<Index>> meet(n, std::vector<Index>(n, 0));
  for (Index x = 1; x < n; ++x) meet[x][x] = x;
  // Atom 1 + c is the coset blocks[c]; locate cosets through their least member.
  std::vector<Index> atom_of(static_cast<std::size_t>(*group.order()));
  for (std::size_t c = 0; c < blocks.size(); ++c) {
    for (const auto& e : blocks[c]) atom_of[group.index_of(e)] = 1 + c;
  }
  std::vector<Permutation> action;
  for (std::size_t i = 0; i < group.rank(); ++i) {
    Permutation p(n, 0);
    for (std::size_t c = 0; c < blocks.size(); ++c) {
      p[1 + c] = atom_of[group.index_of(group.mul(group.generator(i), blocks[c].front()))];
    }
    action.push_back(std::move(p));
  }
  return FSemilattice(group, std::move(labels), std::move(meet), std::move(action));
}

std::vector<Permutation> subgroup_action_table(const Subgroup& k, const SubgroupAlgebra& u) {
  const auto& gu = u.algebra.group();
  if (!gu.is_finite()) throw PreconditionError("the group of U must be finite");
  if (*gu.order() != k.order()) {
    throw PreconditionError("group of U (" + gu.describe() + ") does not match |K| = " + std::to_string(k.order()));
  }
  GroupHom phi = [&] {
    try {
      return GroupHom(gu, k.parent(), u.generator_images);
    } catch (const ShapeError& e) {
      throw PreconditionError(std::string("generator correspondence for U is not a homomorphism: ") + e.what());
    }
  }();
  std::vector<Permutation> table(k.order());
  std::vector<bool> hit(k.order(), false);
  for (const auto& x : gu.elements()) {
    const auto img = phi(x);
    if (!k.contains(img)) throw PreconditionError("generator images of U leave the subgroup K");
    const auto pos = position_in(k, img);
    if (hit[pos]) throw PreconditionError("generator correspondence for U is not injective");
    hit[pos] = true;
    Permutation p(u.algebra.size());
    for (Index v = 0; v < p.size(); ++v) p[v] = u.algebra.act(x, v);
    table[pos] = std::move(p);
  }
  return table;
}

SubgroupAlgebra one_element_over(const Subgroup& k) { return trivially_acted(k, {"o"}, {{0}}); }

SubgroupAlgebra chain2_over(const Subgroup& k) { return trivially_acted(k, {"0", "1"}, {{0, 0}, {0, 1}}); }

FSemilattice twisted_multiple(const TwistedSpec& spec) {
  const auto& tr = spec.transversal;
  const auto& k = tr.subgroup();
  const auto& f = k.parent();
  const auto& u = spec.u.algebra;
  const auto table = subgroup_action_table(k, spec.u);
  const auto us = u.size();
  const auto ts = tr.size();
  const auto n = 1 + us * ts;

  std::vector<std::string> labels{"o"};
  for (std::size_t t = 0; t < ts; ++t) {
    for (Index x = 0; x < us; ++x) labels.push_back(u.label(x) + "@" + to_string(tr.reps()[t]));
  }
  if (std::find(labels.begin() + 1, labels.end(), "o") != labels.end()) {
    throw PreconditionError("label clash with the zero");
  }
  std::vector<std::vector<Index>> meet(n, std::vector<Index>(n, 0));
  for (std::size_t t = 0; t < ts; ++t) {
    for (Index x = 0; x < us; ++x) {
      for (Index y = 0; y < us; ++y) meet[twisted_index(us, t, x)][twisted_index(us, t, y)] = twisted_index(us, t, u.meet(x, y));
    }
  }
  std::vector<Permutation> action;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    const auto g = f.generator(i);
    Permutation p(n, 0);
    for (std::size_t t = 0; t < ts; ++t) {
      const auto gt = f.mul(g, tr.reps()[t]);
      const auto fi = tr.rep_index_of(gt);
      const auto shift = f.mul(gt, f.inv(tr.reps()[fi]));
      const auto& perm = table[position_in(k, shift)];
      for (Index x = 0; x < us; ++x) p[twisted_index(us, t, x)] = twisted_index(us, fi, perm[x]);
    }
    action.push_back(std::move(p));
  }
  return FSemilattice(f, std::move(labels), std::move(meet), std::move(action));
}

FSemilattice a_k(int k) {
  if (k < 1) throw PreconditionError("A_k needs k >= 1");
  const auto n = static_cast<std::size_t>(k) + 1;
  std::vector<std::string> labels{"o"};
  for (int i = 0; i < k; ++i) labels.push_back("a" + std::to_string(i));
  std::vector<std::vector<Index>> meet(n, std::vector<Index>(n, 0));
  for (Index x = 1; x < n; ++x) meet[x][x] = x;
  Permutation p(n, 0);
  for (Index x = 1; x < n; ++x) p[x] = x % static_cast<Index>(k) + 1;
  return FSemilattice(GroupSpec({0}), std::move(labels), std::move(meet), {std::move(p)});
}

FSemilattice two_element(const GroupSpec& group) {
  std::vector<Permutation> action(group.rank(), Permutation{0, 1});
  return FSemilattice(group, {"0", "1"}, {{0, 0}, {0, 1}}, std::move(action));
}

Homomorphism transversal_independence_check(const Transversal& t1, const Transversal& t2,
                                            const SubgroupAlgebra& u) {
  if (!(t1.subgroup() == t2.subgroup())) throw PreconditionError("transversals belong to different subgroups");
  const auto& k = t1.subgroup();
  const auto& f = k.parent();
  const auto b1 = twisted_multiple({t1, u});
  const auto b2 = twisted_multiple({t2, u});
  const auto table = subgroup_action_table(k, u);
  const auto us = u.algebra.size();
  std::vector<Index> map(b1.size(), 0);
  for (std::size_t i = 0; i < t1.size(); ++i) {
    const auto& t = t1.reps()[i];
    const auto j = t2.rep_index_of(t);
    const auto shift = f.mul(f.inv(t2.reps()[j]), t);
    const auto& perm = table[position_in(k, shift)];
    for (Index x = 0; x < us; ++x) map[twisted_index(us, i, x)] = twisted_index(us, j, perm[x]);
  }
  if (!is_isomorphism(b1, b2, map)) {
    throw VerificationError("transversal change map is not an isomorphism");
  }
  return Homomorphism{std::move(map)};
}

}  // namespace fsl

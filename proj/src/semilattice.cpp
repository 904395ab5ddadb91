#include "fsl/semilattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fsl/errors.hpp"

namespace fsl {

namespace {

constexpr Index kNone = static_cast<Index>(-1);

bool is_permutation_of(const Permutation& p, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (auto v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::size_t permutation_order(const Permutation& p) {
  std::vector<bool> done(p.size(), false);
  std::size_t order = 1;
  for (Index s = 0; s < p.size(); ++s) {
    if (done[s]) continue;
    std::size_t len = 0;
    for (Index x = s; !done[x]; x = p[x]) {
      done[x] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  const auto r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

FSemilattice::FSemilattice(GroupSpec group, std::vector<std::string> labels, std::vector<std::vector<Index>> meet,
                           std::vector<Permutation> action)
    : group_(std::move(group)), labels_(std::move(labels)), action_(std::move(action)) {
  const auto n = labels_.size();
  if (n == 0) throw ShapeError("carrier must be nonempty");
  {
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ShapeError("carrier labels must be distinct");
    }
  }
  if (meet.size() != n) throw ShapeError("meet table must have one row per carrier element");
  meet_.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (meet[r].size() != n) throw ShapeError("meet table row " + std::to_string(r) + " has wrong length");
    for (auto v : meet[r]) {
      if (v >= n) throw ShapeError("meet table entry out of range in row " + std::to_string(r));
      meet_.push_back(v);
    }
  }
  if (action_.size() != group_.rank()) {
    throw ShapeError("need one action permutation per group generator (" + std::to_string(group_.rank()) + ")");
  }
  for (std::size_t i = 0; i < action_.size(); ++i) {
    const auto& p = action_[i];
    if (p.size() != n) throw ShapeError("action of generator " + std::to_string(i) + " has wrong length");
    for (auto v : p) {
      if (v >= n) throw ShapeError("action of generator " + std::to_string(i) + " maps outside the carrier");
    }
    Permutation inv(n, kNone);
    if (is_permutation_of(p, n)) {
      for (Index x = 0; x < n; ++x) inv[p[x]] = x;
      perm_order_.push_back(permutation_order(p));
    } else {
      // Not invertible; validate_axioms reports it, act() refuses it.
      perm_order_.push_back(0);
    }
    inverse_.push_back(std::move(inv));
  }
}

std::optional<Index> FSemilattice::find_label(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

std::vector<std::vector<Index>> FSemilattice::meet_table() const {
  std::vector<std::vector<Index>> t(size());
  for (Index x = 0; x < size(); ++x) t[x].assign(meet_.begin() + x * size(), meet_.begin() + (x + 1) * size());
  return t;
}

Index FSemilattice::act(const GroupElement& g, Index x) const {
  if (g.coords.size() != group_.rank()) throw ShapeError("group element " + to_string(g) + " has wrong length");
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (g.coords[i] == 0) continue;
    if (perm_order_[i] == 0) {
      throw PreconditionError("generator " + std::to_string(i) + " does not act by a permutation");
    }
    const auto e = floor_mod(g.coords[i], static_cast<std::int64_t>(perm_order_[i]));
    for (std::int64_t k = 0; k < e; ++k) x = action_[i][x];
  }
  return x;
}

// --- validation -------------------------------------------------------------

ValidationReport validate_axioms(const FSemilattice& a) {
  const auto n = a.size();
  auto fail = [](std::string axiom, std::string msg, std::vector<Index> w, std::optional<std::size_t> gen = {}) {
    return ValidationReport{false, std::move(axiom), std::move(msg), std::move(w), gen};
  };
  for (Index x = 0; x < n; ++x) {
    if (a.meet(x, x) != x) return fail("idempotence", "x ^ x != x", {x});
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      if (a.meet(x, y) != a.meet(y, x)) return fail("commutativity", "x ^ y != y ^ x", {x, y});
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (Index z = 0; z < n; ++z) {
        if (a.meet(a.meet(x, y), z) != a.meet(x, a.meet(y, z))) {
          return fail("associativity", "(x ^ y) ^ z != x ^ (y ^ z)", {x, y, z});
        }
      }
    }
  }
  for (std::size_t i = 0; i < a.group().rank(); ++i) {
    const auto& p = a.action()[i];
    std::vector<Index> preimage(n, kNone);
    for (Index x = 0; x < n; ++x) {
      if (preimage[p[x]] != kNone) {
        return fail("automorphism", "generator is not injective: g(x) = g(y)", {preimage[p[x]], x}, i);
      }
      preimage[p[x]] = x;
    }
    for (Index x = 0; x < n; ++x) {
      for (Index y = x + 1; y < n; ++y) {
        if (p[a.meet(x, y)] != a.meet(p[x], p[y])) {
          return fail("automorphism", "g(x ^ y) != g(x) ^ g(y)", {x, y}, i);
        }
      }
    }
  }
  for (std::size_t i = 0; i < a.group().rank(); ++i) {
    for (std::size_t j = i + 1; j < a.group().rank(); ++j) {
      for (Index x = 0; x < n; ++x) {
        if (a.gen(i, a.gen(j, x)) != a.gen(j, a.gen(i, x))) {
          return fail("commuting action", "generators " + std::to_string(i) + " and " + std::to_string(j) +
                                                    " do not commute at x",
                      {x}, i);
        }
      }
    }
    const auto k = a.group().orders()[i];
    if (k != 0 && static_cast<std::size_t>(k) % a.gen_order(i) != 0) {
      for (Index x = 0; x < n; ++x) {
        Index y = x;
        for (std::int64_t s = 0; s < k; ++s) y = a.gen(i, y);
        if (y != x) {
          return fail("generator order", "g^" + std::to_string(k) + "(x) != x for a factor of order " +
                                                   std::to_string(k),
                      {x}, i);
        }
      }
    }
  }
  return {};
}

void require_valid(const FSemilattice& a) {
  const auto r = validate_axioms(a);
  if (!r.valid) throw PreconditionError("not an F-semilattice: axiom " + r.axiom + " fails (" + r.message + ")");
}

// --- order structure --------------------------------------------------------

Index zero(const FSemilattice& a) {
  Index z = 0;
  for (Index x = 1; x < a.size(); ++x) z = a.meet(z, x);
  return z;
}

bool leq(const FSemilattice& a, Index x, Index y) { return a.meet(x, y) == x; }

std::vector<std::pair<Index, Index>> cover_edges(const FSemilattice& a) {
  const auto n = a.size();
  std::vector<std::pair<Index, Index>> edges;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (x == y || !leq(a, x, y)) continue;
      bool covered = true;
      for (Index z = 0; z < n && covered; ++z) {
        if (z != x && z != y && leq(a, x, z) && leq(a, z, y)) covered = false;
      }
      if (covered) edges.emplace_back(x, y);
    }
  }
  return edges;
}

std::vector<Index> atoms(const FSemilattice& a) {
  const auto z = zero(a);
  std::vector<Index> out;
  for (const auto& [lo, hi] : cover_edges(a)) {
    if (lo == z) out.push_back(hi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> maximal_elements(const FSemilattice& a) {
  std::vector<Index> out;
  for (Index x = 0; x < a.size(); ++x) {
    bool maximal = true;
    for (Index y = 0; y < a.size() && maximal; ++y) {
      if (y != x && leq(a, x, y)) maximal = false;
    }
    if (maximal) out.push_back(x);
  }
  return out;
}

// --- subalgebras ------------------------------------------------------------

std::vector<Index> closure(const FSemilattice& a, std::span<const Index> seeds) {
  std::vector<bool> in(a.size(), false);
  std::vector<Index> members;
  auto add = [&](Index x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  for (std::size_t g = 0; g < a.group().rank(); ++g) {
    if (a.gen_order(g) == 0) throw PreconditionError("generator " + std::to_string(g) + " is not a permutation");
  }
  for (auto s : seeds) add(s);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto x = members[i];
    for (std::size_t g = 0; g < a.group().rank(); ++g) {
      add(a.gen(g, x));
      add(a.gen_inv(g, x));
    }
    for (std::size_t j = 0; j <= i; ++j) add(a.meet(x, members[j]));
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::optional<Index> Subalgebra::local_index(Index parent) const {
  auto it = std::lower_bound(embedding.begin(), embedding.end(), parent);
  if (it == embedding.end() || *it != parent) return std::nullopt;
  return static_cast<Index>(it - embedding.begin());
}

Subalgebra induced_subalgebra(const FSemilattice& a, std::vector<Index> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<Index> local(a.size(), kNone);
  for (Index i = 0; i < elements.size(); ++i) local[elements[i]] = i;
  auto to_local = [&](Index x) {
    if (local[x] == kNone) throw PreconditionError("subset is not closed under the operations");
    return local[x];
  };
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> meet(elements.size());
  for (Index i = 0; i < elements.size(); ++i) {
    labels.push_back(a.label(elements[i]));
    for (Index j = 0; j < elements.size(); ++j) meet[i].push_back(to_local(a.meet(elements[i], elements[j])));
  }
  std::vector<Permutation> action(a.group().rank());
  for (std::size_t g = 0; g < action.size(); ++g) {
    for (auto x : elements) action[g].push_back(to_local(a.gen(g, x)));
  }
  return Subalgebra{FSemilattice(a.group(), std::move(labels), std::move(meet), std::move(action)),
                    std::move(elements)};
}

Subalgebra subalgebra_generated(const FSemilattice& a, Index b) {
  const Index seed[] = {b};
  return induced_subalgebra(a, closure(a, seed));
}

bool generates(const FSemilattice& a, Index x) {
  const Index seed[] = {x};
  return closure(a, seed).size() == a.size();
}

// --- homomorphisms ----------------------------------------------------------

bool Homomorphism::injective() const {
  auto sorted = map;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool Homomorphism::surjective(std::size_t target_size) const {
  std::vector<bool> hit(target_size, false);
  for (auto v : map) hit.at(v) = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_homomorphism(const FSemilattice& s, const FSemilattice& t, std::span<const Index> map) {
  if (!(s.group() == t.group()) || map.size() != s.size()) return false;
  for (auto v : map) {
    if (v >= t.size()) return false;
  }
  for (Index x = 0; x < s.size(); ++x) {
    for (Index y = 0; y < s.size(); ++y) {
      if (map[s.meet(x, y)] != t.meet(map[x], map[y])) return false;
    }
    for (std::size_t g = 0; g < s.group().rank(); ++g) {
      if (map[s.gen(g, x)] != t.gen(g, map[x])) return false;
    }
  }
  return true;
}

bool is_isomorphism(const FSemilattice& s, const FSemilattice& t, std::span<const Index> map) {
  if (s.size() != t.size() || !is_homomorphism(s, t, map)) return false;
  Homomorphism h{std::vector<Index>(map.begin(), map.end())};
  return h.injective();
}

HomExtension hom_extend(const FSemilattice& source, Index a, const FSemilattice& target, Index b) {
  if (!(source.group() == target.group())) {
    throw PreconditionError("homomorphisms are only defined between algebras over the same group");
  }
  if (a >= source.size() || b >= target.size()) throw ShapeError("element index out of range");
  if (!generates(source, a)) {
    throw PreconditionError("element " + source.label(a) + " does not generate the source algebra");
  }
  const auto& group = source.group();
  std::vector<Index> image(source.size(), kNone);
  std::vector<std::optional<Term>> term_of(source.size());
  std::vector<Index> order;
  HomExtension result;

  // Closes {(a, b)} under the operations applied pairwise; stops at the first
  // source element paired with two different targets.
  auto add = [&](Index x, Index y, Term t) {
    if (image[x] == kNone) {
      image[x] = y;
      term_of[x] = std::move(t);
      order.push_back(x);
      return true;
    }
    if (image[x] != y) {
      result.conflict.emplace(*term_of[x], std::move(t));
      return false;
    }
    return true;
  };

  if (!add(a, b, Term::variable(group, 0))) return result;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto x = order[i];
    const auto y = image[x];
    for (std::size_t g = 0; g < group.rank(); ++g) {
      const auto gen = group.generator(g);
      if (!add(source.gen(g, x), target.gen(g, y), term_of[x]->translated(group, gen))) return result;
      if (!add(source.gen_inv(g, x), target.gen_inv(g, y), term_of[x]->translated(group, group.inv(gen)))) {
        return result;
      }
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const auto x2 = order[j];
      if (!add(source.meet(x, x2), target.meet(y, image[x2]), term_of[x]->meet(*term_of[x2]))) return result;
    }
  }
  result.hom = Homomorphism{std::move(image)};
  return result;
}

std::optional<Homomorphism> is_isomorphic_1gen(const FSemilattice& source, Index a, const FSemilattice& target,
                                               Index b) {
  if (source.size() != target.size()) return std::nullopt;
  auto ext = hom_extend(source, a, target, b);
  // A bijective homomorphism of finite algebras is an isomorphism.
  if (!ext.hom || !ext.hom->injective()) return std::nullopt;
  return ext.hom;
}

FSemilattice opposite(const FSemilattice& a) {
  std::vector<Permutation> inv;
  for (std::size_t g = 0; g < a.group().rank(); ++g) {
    Permutation p(a.size());
    for (Index x = 0; x < a.size(); ++x) p[x] = a.gen_inv(g, x);
    inv.push_back(std::move(p));
  }
  return FSemilattice(a.group(), std::vector<std::string>(a.labels().begin(), a.labels().end()), a.meet_table(),
                      std::move(inv));
}

FSemilattice change_of_groups(const FSemilattice& a, const GroupHom& phi) {
  if (!(phi.codomain() == a.group())) throw PreconditionError("group homomorphism must land in the algebra's group");
  std::vector<Permutation> action;
  for (const auto& h : phi.images()) {
    Permutation p(a.size());
    for (Index x = 0; x < a.size(); ++x) p[x] = a.act(h, x);
    action.push_back(std::move(p));
  }
  return FSemilattice(phi.domain(), std::vector<std::string>(a.labels().begin(), a.labels().end()), a.meet_table(),
                      std::move(action));
}

// --- congruences ------------------------------------------------------------

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Index{0}); }
  Index find(Index x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(Index x, Index y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
    return true;
  }

 private:
  std::vector<Index> parent_;
};

Congruence from_union_find(UnionFind& uf, std::size_t n) {
  std::vector<std::size_t> roots(n);
  for (Index x = 0; x < n; ++x) roots[x] = uf.find(x);
  return make_congruence(roots);
}

// Merges every pending pair and its translates under meet and the action.
Congruence close_compatible(const FSemilattice& a, std::vector<std::pair<Index, Index>> pending) {
  const auto n = a.size();
  UnionFind uf(n);
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    if (!uf.unite(x, y)) continue;
    for (Index z = 0; z < n; ++z) pending.emplace_back(a.meet(x, z), a.meet(y, z));
    for (std::size_t g = 0; g < a.group().rank(); ++g) pending.emplace_back(a.gen(g, x), a.gen(g, y));
  }
  return from_union_find(uf, n);
}

Congruence join(const Congruence& c1, const Congruence& c2) {
  const auto n = c1.block_of.size();
  UnionFind uf(n);
  std::vector<Index> first1(n, kNone), first2(n, kNone);
  for (Index x = 0; x < n; ++x) {
    auto& f1 = first1[c1.block_of[x]];
    if (f1 == kNone) f1 = x; else uf.unite(f1, x);
    auto& f2 = first2[c2.block_of[x]];
    if (f2 == kNone) f2 = x; else uf.unite(f2, x);
  }
  return from_union_find(uf, n);
}

}  // namespace

std::size_t Congruence::block_count() const {
  return block_of.empty() ? 0 : *std::max_element(block_of.begin(), block_of.end()) + 1;
}

std::vector<std::vector<Index>> Congruence::blocks() const {
  std::vector<std::vector<Index>> out(block_count());
  for (Index x = 0; x < block_of.size(); ++x) out[block_of[x]].push_back(x);
  return out;
}

Congruence make_congruence(std::span<const std::size_t> block_of) {
  std::vector<std::size_t> renumber;
  std::vector<std::size_t> keys;
  Congruence c;
  for (auto b : block_of) {
    auto it = std::find(keys.begin(), keys.end(), b);
    if (it == keys.end()) {
      keys.push_back(b);
      c.block_of.push_back(keys.size() - 1);
    } else {
      c.block_of.push_back(static_cast<std::size_t>(it - keys.begin()));
    }
  }
  return c;
}

bool is_congruence(const FSemilattice& a, const Congruence& c) {
  const auto n = a.size();
  if (c.block_of.size() != n) return false;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      if (c.block_of[x] != c.block_of[y]) continue;
      for (Index z = 0; z < n; ++z) {
        if (c.block_of[a.meet(x, z)] != c.block_of[a.meet(y, z)]) return false;
      }
      for (std::size_t g = 0; g < a.group().rank(); ++g) {
        if (c.block_of[a.gen(g, x)] != c.block_of[a.gen(g, y)]) return false;
      }
    }
  }
  return true;
}

Congruence principal_congruence(const FSemilattice& a, Index x, Index y) { return close_compatible(a, {{x, y}}); }

std::vector<Congruence> congruences(const FSemilattice& a, std::size_t limit) {
  if (a.size() > limit) {
    throw LimitExceededError("congruence enumeration limited to " + std::to_string(limit) + " elements, algebra has " +
                             std::to_string(a.size()));
  }
  const auto n = a.size();
  std::set<Congruence> principals;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) principals.insert(principal_congruence(a, x, y));
  }
  std::set<Congruence> all = principals;
  all.insert(close_compatible(a, {}));
  std::vector<Congruence> frontier(principals.begin(), principals.end());
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (const auto& c : frontier) {
      for (const auto& p : principals) {
        auto j = join(c, p);
        if (all.insert(j).second) next.push_back(std::move(j));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Congruence> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](const Congruence& l, const Congruence& r) {
    if (l.block_count() != r.block_count()) return l.block_count() > r.block_count();
    return l.block_of < r.block_of;
  });
  return out;
}

FSemilattice quotient(const FSemilattice& a, const Congruence& c) {
  if (!is_congruence(a, c)) throw PreconditionError("partition is not a congruence");
  const auto blocks = c.blocks();
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> meet(blocks.size());
  std::vector<Permutation> action(a.group().rank());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].size() == 1) {
      labels.push_back(a.label(blocks[b][0]));
    } else {
      std::string l = "{";
      for (std::size_t i = 0; i < blocks[b].size(); ++i) l += (i ? "," : "") + a.label(blocks[b][i]);
      labels.push_back(l + "}");
    }
    const auto rep = blocks[b][0];
    for (std::size_t b2 = 0; b2 < blocks.size(); ++b2) meet[b].push_back(c.block_of[a.meet(rep, blocks[b2][0])]);
    for (std::size_t g = 0; g < action.size(); ++g) action[g].push_back(c.block_of[a.gen(g, rep)]);
  }
  return FSemilattice(a.group(), std::move(labels), std::move(meet), std::move(action));
}

}  // namespace fsl

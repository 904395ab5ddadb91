#include "fsl/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "fsl/errors.hpp"

namespace fsl {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

// Bitmap over element indices of a finite group.
std::vector<bool> closure_bitmap(const GroupSpec& g, std::span<const GroupElement> seeds) {
  const auto n = static_cast<std::size_t>(*g.order());
  std::vector<bool> in(n, false);
  std::vector<GroupElement> members{g.identity()};
  in[g.index_of(g.identity())] = true;
  std::vector<GroupElement> gens(seeds.begin(), seeds.end());
  // Multiplying by generators suffices: in a finite group, inverses are powers.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const auto& s : gens) {
      auto p = g.mul(members[i], s);
      const auto idx = g.index_of(p);
      if (!in[idx]) {
        in[idx] = true;
        members.push_back(std::move(p));
      }
    }
  }
  return in;
}

std::vector<GroupElement> bitmap_elements(const GroupSpec& g, const std::vector<bool>& in) {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) out.push_back(g.element_at(i));
  }
  return out;
}

}  // namespace

std::string to_string(const GroupElement& g) {
  if (g.coords.size() == 1) return std::to_string(g.coords[0]);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i) os << ',';
    os << g.coords[i];
  }
  os << ')';
  return os.str();
}

GroupSpec::GroupSpec(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw ShapeError("group needs at least one cyclic factor");
  for (auto k : orders_) {
    if (k < 0) throw ShapeError("cyclic factor orders must be nonnegative");
  }
}

GroupSpec make_group(std::vector<std::int64_t> orders) { return GroupSpec(std::move(orders)); }

bool GroupSpec::is_finite() const {
  return std::none_of(orders_.begin(), orders_.end(), [](auto k) { return k == 0; });
}

std::optional<std::uint64_t> GroupSpec::order() const {
  if (!is_finite()) return std::nullopt;
  std::uint64_t n = 1;
  for (auto k : orders_) n *= static_cast<std::uint64_t>(k);
  return n;
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) os << " x ";
    if (orders_[i] == 0) {
      os << "Z_inf";
    } else {
      os << 'Z' << orders_[i];
    }
  }
  return os.str();
}

GroupElement GroupSpec::identity() const {
  return GroupElement{std::vector<std::int64_t>(orders_.size(), 0)};
}

GroupElement GroupSpec::generator(std::size_t i) const {
  if (i >= rank()) throw ShapeError("generator index out of range");
  auto coords = std::vector<std::int64_t>(orders_.size(), 0);
  coords[i] = 1;
  return reduce(std::move(coords));
}

void GroupSpec::check_arity(const GroupElement& g) const {
  if (g.coords.size() != orders_.size()) {
    throw ShapeError("element " + to_string(g) + " has wrong length for " + describe());
  }
}

GroupElement GroupSpec::reduce(std::vector<std::int64_t> coords) const {
  if (coords.size() != orders_.size()) throw ShapeError("coordinate length mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (orders_[i] != 0) coords[i] = mod(coords[i], orders_[i]);
  }
  return GroupElement{std::move(coords)};
}

bool GroupSpec::contains(const GroupElement& g) const {
  if (g.coords.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (orders_[i] != 0 && (g.coords[i] < 0 || g.coords[i] >= orders_[i])) return false;
  }
  return true;
}

GroupElement GroupSpec::mul(const GroupElement& g, const GroupElement& h) const {
  check_arity(g);
  check_arity(h);
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = g.coords[i] + h.coords[i];
  return reduce(std::move(c));
}

GroupElement GroupSpec::inv(const GroupElement& g) const {
  check_arity(g);
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -g.coords[i];
  return reduce(std::move(c));
}

GroupElement GroupSpec::pow(const GroupElement& g, std::int64_t n) const {
  check_arity(g);
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = orders_[i] == 0 ? g.coords[i] * n : mod(g.coords[i] * mod(n, orders_[i]), orders_[i]);
  }
  return reduce(std::move(c));
}

std::uint64_t GroupSpec::element_order(const GroupElement& g) const {
  check_arity(g);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (g.coords[i] == 0) continue;
    if (orders_[i] == 0) return 0;
    const auto k = static_cast<std::uint64_t>(orders_[i]);
    const auto c = static_cast<std::uint64_t>(mod(g.coords[i], orders_[i]));
    result = std::lcm(result, k / std::gcd(k, c));
  }
  return result;
}

void GroupSpec::require_finite(const char* what) const {
  if (!is_finite()) throw InfiniteGroupError(std::string(what) + " needs a finite group, got " + describe());
}

std::size_t GroupSpec::index_of(const GroupElement& g) const {
  require_finite("index_of");
  if (!contains(g)) throw ShapeError("element " + to_string(g) + " is not in " + describe());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(g.coords[i]);
  }
  return idx;
}

GroupElement GroupSpec::element_at(std::size_t index) const {
  require_finite("element_at");
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    const auto k = static_cast<std::size_t>(orders_[i]);
    c[i] = static_cast<std::int64_t>(index % k);
    index /= k;
  }
  return GroupElement{std::move(c)};
}

std::vector<GroupElement> GroupSpec::elements() const {
  require_finite("elements");
  const auto n = static_cast<std::size_t>(*order());
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

// --- Subgroup ---------------------------------------------------------------

Subgroup::Subgroup(GroupSpec parent, std::vector<GroupElement> sorted_elements)
    : parent_(std::move(parent)), elements_(std::move(sorted_elements)) {
  // Greedy irredundant generators: take an element whenever it enlarges the span.
  std::vector<bool> span = closure_bitmap(parent_, {});
  for (const auto& e : elements_) {
    if (span[parent_.index_of(e)]) continue;
    generators_.push_back(e);
    span = closure_bitmap(parent_, generators_);
  }
}

Subgroup Subgroup::generated_by(const GroupSpec& parent, std::span<const GroupElement> gens) {
  if (!parent.is_finite()) throw InfiniteGroupError("subgroups need a finite group, got " + parent.describe());
  for (const auto& g : gens) {
    if (!parent.contains(g)) throw ShapeError("generator " + to_string(g) + " is not in " + parent.describe());
  }
  return Subgroup(parent, bitmap_elements(parent, closure_bitmap(parent, gens)));
}

Subgroup Subgroup::from_elements(const GroupSpec& parent, std::vector<GroupElement> elements) {
  if (!parent.is_finite()) throw InfiniteGroupError("subgroups need a finite group, got " + parent.describe());
  std::vector<GroupElement> reduced;
  reduced.reserve(elements.size());
  for (auto& e : elements) reduced.push_back(parent.reduce(std::move(e.coords)));
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  if (reduced.empty() || !std::binary_search(reduced.begin(), reduced.end(), parent.identity())) {
    throw NotASubgroupError("subset does not contain the identity");
  }
  for (const auto& a : reduced) {
    for (const auto& b : reduced) {
      const auto c = parent.mul(a, parent.inv(b));
      if (!std::binary_search(reduced.begin(), reduced.end(), c)) {
        throw NotASubgroupError("subset is not closed: " + to_string(a) + " - " + to_string(b) + " = " +
                                to_string(c) + " is missing");
      }
    }
  }
  return Subgroup(parent, std::move(reduced));
}

Subgroup Subgroup::trivial(const GroupSpec& parent) { return generated_by(parent, {}); }

Subgroup Subgroup::full(const GroupSpec& parent) {
  const auto gens = [&] {
    std::vector<GroupElement> v;
    for (std::size_t i = 0; i < parent.rank(); ++i) v.push_back(parent.generator(i));
    return v;
  }();
  return generated_by(parent, gens);
}

std::size_t Subgroup::index() const { return static_cast<std::size_t>(*parent_.order()) / order(); }

bool Subgroup::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool Subgroup::is_full() const { return order() == static_cast<std::size_t>(*parent_.order()); }

bool Subgroup::operator<(const Subgroup& other) const {
  if (order() != other.order()) return order() < other.order();
  return elements_ < other.elements_;
}

std::vector<Subgroup> subgroups(const GroupSpec& group) {
  if (!group.is_finite()) throw InfiniteGroupError("subgroups needs a finite group, got " + group.describe());
  const auto all = group.elements();
  std::set<std::vector<bool>> seen;
  std::deque<std::vector<bool>> queue;
  auto start = closure_bitmap(group, {});
  seen.insert(start);
  queue.push_back(start);
  // Breadth-first: grow each known subgroup by one element outside it.
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (cur[i]) continue;
      std::vector<GroupElement> gens = bitmap_elements(group, cur);
      gens.push_back(all[i]);
      auto next = closure_bitmap(group, gens);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& bits : seen) out.push_back(Subgroup::from_elements(group, bitmap_elements(group, bits)));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void require_subgroup_of(const GroupSpec& group, const Subgroup& sub) {
  if (!group.is_finite()) throw InfiniteGroupError("coset operations need a finite group, got " + group.describe());
  if (!(sub.parent() == group)) throw NotASubgroupError("subgroup belongs to a different group");
}

}  // namespace

std::vector<std::vector<GroupElement>> cosets(const GroupSpec& group, const Subgroup& sub) {
  require_subgroup_of(group, sub);
  const auto n = static_cast<std::size_t>(*group.order());
  std::vector<bool> covered(n, false);
  std::vector<std::vector<GroupElement>> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (covered[i]) continue;
    const auto g = group.element_at(i);
    std::vector<GroupElement> block;
    for (const auto& h : sub.elements()) {
      auto gh = group.mul(g, h);
      covered[group.index_of(gh)] = true;
      block.push_back(std::move(gh));
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// --- Transversal ------------------------------------------------------------

Transversal::Transversal(Subgroup subgroup, std::vector<GroupElement> reps)
    : subgroup_(std::move(subgroup)), reps_(std::move(reps)) {
  const auto& g = subgroup_.parent();
  const auto n = static_cast<std::size_t>(*g.order());
  constexpr auto unset = static_cast<std::size_t>(-1);
  rep_of_element_.assign(n, unset);
  for (std::size_t r = 0; r < reps_.size(); ++r) {
    if (!g.contains(reps_[r])) throw ShapeError("representative " + to_string(reps_[r]) + " is not in the group");
    for (const auto& h : subgroup_.elements()) {
      const auto idx = g.index_of(g.mul(reps_[r], h));
      if (rep_of_element_[idx] != unset) {
        throw PreconditionError("representatives " + to_string(reps_[rep_of_element_[idx]]) + " and " +
                                to_string(reps_[r]) + " lie in the same coset");
      }
      rep_of_element_[idx] = r;
    }
  }
  if (std::find(rep_of_element_.begin(), rep_of_element_.end(), unset) != rep_of_element_.end()) {
    throw PreconditionError("transversal misses a coset");
  }
}

std::size_t Transversal::rep_index_of(const GroupElement& g) const {
  return rep_of_element_[subgroup_.parent().index_of(g)];
}

bool Transversal::is_normalized() const {
  const auto id = subgroup_.parent().identity();
  return std::find(reps_.begin(), reps_.end(), id) != reps_.end();
}

Transversal transversal(const GroupSpec& group, const Subgroup& sub, bool normalized) {
  std::vector<GroupElement> reps;
  for (auto& block : cosets(group, sub)) {
    reps.push_back(normalized ? block.front() : block.back());
  }
  // Cosets come ordered by least member, so the identity is already reps[0].
  return Transversal(sub, std::move(reps));
}

// --- CyclicBasis ------------------------------------------------------------

namespace {

bool extend_basis(const GroupSpec& g, const std::vector<GroupElement>& candidates, std::size_t target,
                  std::vector<GroupElement>& chosen, std::size_t span_size) {
  if (span_size == target) return true;
  for (const auto& c : candidates) {
    const auto ord = g.element_order(c);
    if (span_size * ord > target) continue;
    chosen.push_back(c);
    const auto bits = closure_bitmap(g, chosen);
    const auto size = static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true));
    if (size == span_size * ord && extend_basis(g, candidates, target, chosen, size)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

CyclicBasis cyclic_basis(const Subgroup& sub) {
  const auto& g = sub.parent();
  if (sub.is_trivial()) return CyclicBasis{GroupSpec({1}), {g.identity()}};
  std::vector<GroupElement> candidates;
  for (const auto& e : sub.elements()) {
    if (e != g.identity()) candidates.push_back(e);
  }
  // Elements of larger order first; ties broken by element order.
  std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    return g.element_order(a) > g.element_order(b);
  });
  std::vector<GroupElement> chosen;
  if (!extend_basis(g, candidates, sub.order(), chosen, 1)) {
    throw VerificationError("no cyclic basis found for a finite abelian group");
  }
  std::vector<std::int64_t> orders;
  for (const auto& c : chosen) orders.push_back(static_cast<std::int64_t>(g.element_order(c)));
  return CyclicBasis{GroupSpec(std::move(orders)), std::move(chosen)};
}

// --- GroupHom ---------------------------------------------------------------

GroupHom::GroupHom(GroupSpec domain, GroupSpec codomain, std::vector<GroupElement> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_.rank()) throw ShapeError("need one image per domain generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!codomain_.contains(images_[i])) throw ShapeError("image " + to_string(images_[i]) + " is not in the codomain");
    const auto k = domain_.orders()[i];
    if (k != 0 && codomain_.pow(images_[i], k) != codomain_.identity()) {
      throw ShapeError("image of generator " + std::to_string(i) + " has order not dividing " + std::to_string(k));
    }
  }
}

GroupElement GroupHom::operator()(const GroupElement& x) const {
  if (!domain_.contains(x)) throw ShapeError("element " + to_string(x) + " is not in the domain");
  auto acc = codomain_.identity();
  for (std::size_t i = 0; i < images_.size(); ++i) acc = codomain_.mul(acc, codomain_.pow(images_[i], x.coords[i]));
  return acc;
}

}  // namespace fsl

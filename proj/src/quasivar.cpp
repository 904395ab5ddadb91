#include "fsl/quasivar.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

#include "fsl/errors.hpp"

namespace fsl {

Index eval_term(const FSemilattice& a, const Term& t, std::span<const Index> valuation) {
  std::optional<Index> acc;
  for (const auto& lit : t.literals()) {
    if (lit.var >= valuation.size()) {
      throw PreconditionError("variable " + std::to_string(lit.var) + " is unbound");
    }
    const auto v = a.act(lit.shift, valuation[lit.var]);
    acc = acc ? a.meet(*acc, v) : v;
  }
  return *acc;
}

QuasiIdentityResult holds_quasi_identity(const FSemilattice& a, const QuasiIdentity& qi) {
  std::size_t vars = qi.variables.size();
  auto widen = [&](const Equation& e) { vars = std::max({vars, e.lhs.max_var() + 1, e.rhs.max_var() + 1}); };
  for (const auto& p : qi.premises) widen(p);
  widen(qi.conclusion);

  auto satisfied = [&](const Equation& e, std::span<const Index> val) {
    return eval_term(a, e.lhs, val) == eval_term(a, e.rhs, val);
  };
  std::vector<Index> val(vars, 0);
  while (true) {
    const bool premises = std::all_of(qi.premises.begin(), qi.premises.end(),
                                      [&](const Equation& e) { return satisfied(e, val); });
    if (premises && !satisfied(qi.conclusion, val)) return {false, val};
    // Odometer with the last variable running fastest.
    std::size_t i = vars;
    while (i > 0 && ++val[i - 1] == a.size()) val[--i] = 0;
    if (i == 0) break;
  }
  return {};
}

namespace {

void require_one_generated(const FSemilattice& a, Index g, const char* what) {
  if (g >= a.size()) throw ShapeError("generator index out of range");
  if (a.size() < 2) throw PreconditionError(std::string(what) + " needs a nontrivial algebra");
  if (!generates(a, g)) {
    throw PreconditionError(std::string(what) + ": element " + a.label(g) + " does not generate the algebra");
  }
}

// Every shift of the finite action image, in lexicographic order.
std::vector<GroupElement> image_shifts(const FSemilattice& a) {
  const auto& group = a.group();
  std::vector<std::int64_t> bound(group.rank());
  for (std::size_t i = 0; i < bound.size(); ++i) {
    bound[i] = group.orders()[i] != 0 ? group.orders()[i] : static_cast<std::int64_t>(a.gen_order(i));
  }
  std::vector<GroupElement> out;
  std::vector<std::int64_t> c(group.rank(), 0);
  while (true) {
    out.push_back(GroupElement{c});
    std::size_t i = c.size();
    while (i > 0 && ++c[i - 1] == bound[i - 1]) c[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

// Enumerates nonempty subsets of {0..n-1} by size, then lexicographically.
class SubsetEnumerator {
 public:
  explicit SubsetEnumerator(std::size_t n) : n_(n) {}

  bool next(std::vector<std::size_t>& out) {
    if (cur_.empty()) {
      if (n_ == 0) return false;
      cur_ = {0};
    } else {
      std::size_t k = cur_.size();
      std::size_t i = k;
      while (i > 0 && cur_[i - 1] == n_ - k + i - 1) --i;
      if (i == 0) {
        if (k == n_) return false;
        cur_.resize(k + 1);
        for (std::size_t j = 0; j <= k; ++j) cur_[j] = j;
      } else {
        ++cur_[i - 1];
        for (std::size_t j = i; j < k; ++j) cur_[j] = cur_[j - 1] + 1;
      }
    }
    out = cur_;
    return true;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> cur_;
};

Term unary_term(const std::vector<GroupElement>& shifts, const std::vector<std::size_t>& subset) {
  std::vector<Literal> lits;
  for (auto i : subset) lits.push_back(Literal{shifts[i], 0});
  return Term(std::move(lits));
}

}  // namespace

MinimalityVerdict is_minimal_free(const FSemilattice& a, Index generator) {
  require_one_generated(a, generator, "minimality test");
  const auto z = zero(a);
  for (Index b = 0; b < a.size(); ++b) {
    if (b == z) continue;
    const auto sub = subalgebra_generated(a, b);
    if (!is_isomorphic_1gen(a, generator, sub.algebra, *sub.local_index(b))) return {false, b};
  }
  return {};
}

QuasiIdentity separating_quasi_identity(const FSemilattice& a, Index generator) {
  require_one_generated(a, generator, "separating quasi-identity");
  if (auto v = is_minimal_free(a, generator); !v.minimal) {
    throw PreconditionError("element " + a.label(*v.counterexample) + " generates a subalgebra not isomorphic to A");
  }
  const auto shifts = image_shifts(a);
  const Index seed[] = {generator};
  constexpr std::size_t kMaxTerms = 1'000'000;

  SubsetEnumerator subsets(shifts.size());
  std::vector<std::vector<std::size_t>> seen;
  std::vector<Index> values;
  std::vector<std::size_t> cur;
  while (seen.size() < kMaxTerms && subsets.next(cur)) {
    const auto term = unary_term(shifts, cur);
    const auto value = eval_term(a, term, seed);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == value) continue;
      const auto g = a.group();
      return QuasiIdentity{{"x", "y"},
                           {Equation{unary_term(shifts, seen[i]), term}},
                           Equation{Term::variable(g, 0), Term::variable(g, 0).meet(Term::variable(g, 1))}};
    }
    seen.push_back(cur);
    values.push_back(value);
  }
  throw VerificationError("no separating term pair found for a nontrivial 1-generated algebra");
}

Subgroup stabilizer(const FSemilattice& a, Index x) {
  const auto& g = a.group();
  if (!g.is_finite()) throw InfiniteGroupError("stabilizer needs a finite group; use stabilizer_image");
  std::vector<GroupElement> fix;
  for (const auto& e : g.elements()) {
    if (a.act(e, x) == x) fix.push_back(e);
  }
  return Subgroup::from_elements(g, std::move(fix));
}

ImageStabilizer stabilizer_image(const FSemilattice& a, Index x) {
  const auto rank = a.group().rank();
  Permutation id(a.size());
  for (Index i = 0; i < id.size(); ++i) id[i] = i;
  std::map<Permutation, GroupElement> found{{id, GroupElement{std::vector<std::int64_t>(rank, 0)}}};
  std::vector<Permutation> queue{id};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto cur = queue[q];
    const auto exps = found.at(cur);
    for (std::size_t i = 0; i < rank; ++i) {
      Permutation next(cur.size());
      for (Index y = 0; y < cur.size(); ++y) next[y] = a.gen(i, cur[y]);
      auto e = exps;
      e.coords[i] = (e.coords[i] + 1) % static_cast<std::int64_t>(a.gen_order(i));
      if (found.emplace(next, std::move(e)).second) queue.push_back(std::move(next));
    }
  }
  ImageStabilizer out;
  out.image_order = found.size();
  for (const auto& [perm, exps] : found) {
    if (perm[x] == x) out.elements.push_back(exps);
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

std::string BijectionReport::summary() const {
  std::ostringstream os;
  os << subgroups.size() << " subgroups, " << representatives << " minimal representatives, ";
  const auto failures = std::count_if(subgroups.begin(), subgroups.end(),
                                      [](const SubgroupCheck& c) { return !c.stabilizer_round_trip; });
  if (failures == 0) {
    os << "all round-trips OK";
  } else {
    os << failures << " round-trip failures";
  }
  if (!pairwise_distinct) os << ", isomorphic representatives found";
  return os.str();
}

BijectionReport verify_bijection(const GroupSpec& group) {
  const auto subs = subgroups(group);
  std::vector<FSemilattice> algebras;
  algebras.reserve(subs.size());
  for (const auto& h : subs) algebras.push_back(maroti(group, h));

  // The atom H itself is index 1: the identity is the least member of H.
  constexpr Index kAtomH = 1;
  std::vector<std::future<SubgroupCheck>> jobs;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      SubgroupCheck c{subs[i], algebras[i].size(), std::nullopt, false};
      if (!subs[i].is_full()) c.minimal = is_minimal_free(algebras[i], kAtomH).minimal;
      c.stabilizer_round_trip = stabilizer(algebras[i], kAtomH) == subs[i];
      return c;
    }));
  }
  BijectionReport report;
  for (auto& j : jobs) report.subgroups.push_back(j.get());
  report.representatives = static_cast<std::size_t>(std::count_if(
      report.subgroups.begin(), report.subgroups.end(),
      [](const SubgroupCheck& c) { return c.minimal.value_or(true) && c.stabilizer_round_trip; }));

  for (std::size_t i = 0; i < subs.size() && report.pairwise_distinct; ++i) {
    for (std::size_t j = i + 1; j < subs.size() && report.pairwise_distinct; ++j) {
      if (algebras[i].size() != algebras[j].size()) continue;
      const auto& target = algebras[j];
      const auto z = zero(target);
      for (Index b = 0; b < target.size(); ++b) {
        if (b == z || !generates(target, b)) continue;
        if (is_isomorphic_1gen(algebras[i], kAtomH, target, b)) {
          report.pairwise_distinct = false;
          report.isomorphic_pair.emplace(i, j);
          break;
        }
      }
    }
  }
  report.ok = report.pairwise_distinct && report.representatives == subs.size();
  return report;
}

DecompositionResult decompose_ku(const FSemilattice& a, Index generator, std::size_t block_bound) {
  const auto& f = a.group();
  if (!f.is_finite()) throw InfiniteGroupError("decompose_ku needs a finite group, got " + f.describe());
  require_one_generated(a, generator, "decompose_ku");
  if (auto v = is_minimal_free(a, generator); !v.minimal) {
    throw PreconditionError("algebra is not minimal: " + a.label(*v.counterexample) + " is a counterexample");
  }
  const auto o = zero(a);
  const auto elements = f.elements();

  std::vector<GroupElement> k_elems;
  for (const auto& g : elements) {
    if (a.meet(generator, a.act(g, generator)) != o) k_elems.push_back(g);
  }
  auto k = [&] {
    try {
      return Subgroup::from_elements(f, k_elems);
    } catch (const NotASubgroupError& e) {
      throw VerificationError(std::string("K is not a subgroup: ") + e.what());
    }
  }();
  const auto tr = transversal(f, k, true);

  // f1(a) ∧ … ∧ fn(a) ≠ o exactly when all fi lie in one coset of K.
  std::vector<Index> translate(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) translate[i] = a.act(elements[i], generator);
  std::size_t checks = 0;
  SubsetEnumerator subsets(elements.size());
  std::vector<std::size_t> cur;
  while (subsets.next(cur) && cur.size() <= block_bound) {
    Index m = translate[cur[0]];
    bool same_coset = true;
    const auto coset0 = tr.rep_index_of(elements[cur[0]]);
    for (auto i : cur) {
      m = a.meet(m, translate[i]);
      same_coset = same_coset && tr.rep_index_of(elements[i]) == coset0;
    }
    ++checks;
    if ((m != o) != same_coset) throw VerificationError("coset condition fails on a meet of translates");
  }

  // U: closure of {a} under meet and the action of K.
  std::vector<bool> in(a.size(), false);
  std::vector<Index> members{generator};
  in[generator] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto add = [&](Index y) {
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    };
    for (const auto& g : k.elements()) add(a.act(g, members[i]));
    for (std::size_t j = 0; j <= i; ++j) add(a.meet(members[i], members[j]));
  }
  std::sort(members.begin(), members.end());
  auto basis = cyclic_basis(k);
  std::vector<Index> local(a.size(), 0);
  for (Index i = 0; i < members.size(); ++i) local[members[i]] = i;
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> meet(members.size());
  for (Index i = 0; i < members.size(); ++i) {
    labels.push_back(a.label(members[i]));
    for (Index j = 0; j < members.size(); ++j) meet[i].push_back(local[a.meet(members[i], members[j])]);
  }
  std::vector<Permutation> action;
  for (const auto& b : basis.generators) {
    Permutation p;
    for (auto m : members) p.push_back(local[a.act(b, m)]);
    action.push_back(std::move(p));
  }
  SubgroupAlgebra u{FSemilattice(basis.type, std::move(labels), std::move(meet), std::move(action)),
                    std::move(basis.generators)};

  auto rebuilt = twisted_multiple({tr, u});
  const auto us = members.size();
  std::vector<Index> iso(rebuilt.size(), o);
  for (std::size_t t = 0; t < tr.size(); ++t) {
    for (Index x = 0; x < us; ++x) iso[twisted_index(us, t, x)] = a.act(tr.reps()[t], members[x]);
  }
  if (!is_isomorphism(rebuilt, a, iso)) throw VerificationError("reconstruction from (K, U) is not isomorphic to A");
  return DecompositionResult{std::move(k), std::move(u),      std::move(members), std::move(rebuilt),
                             std::move(iso), block_bound, checks};
}

DeltaResult delta_map(const Subgroup& k, const SubgroupAlgebra& u, Index u_generator) {
  if (k.is_full()) throw PreconditionError("K must be a proper subgroup");
  if (u_generator >= u.algebra.size() || !generates(u.algebra, u_generator)) {
    throw PreconditionError("U must be generated by the given element");
  }
  const auto tr = transversal(k.parent(), k, true);
  auto algebra = twisted_multiple({tr, u});
  const auto gen = twisted_index(u.algebra.size(), 0, u_generator);
  if (auto v = is_minimal_free(algebra, gen); !v.minimal) {
    throw PreconditionError("twisted multiple is not minimal; U lies outside the supported hypotheses");
  }
  return DeltaResult{std::move(algebra), gen};
}

SimplicityReport simplicity_and_quotient_report(const FSemilattice& a, Index generator, std::size_t limit) {
  SimplicityReport report{0, false, separating_quasi_identity(a, generator), {}};
  const auto congs = congruences(a, limit);
  report.congruence_count = congs.size();
  report.simple = congs.size() == 2;
  for (const auto& c : congs) {
    if (c.is_identity() || c.is_total()) continue;
    const auto r = holds_quasi_identity(quotient(a, c), report.separating);
    report.quotients.push_back(QuotientCheck{c, !r.holds, r.counterexample});
  }
  return report;
}

}  // namespace fsl

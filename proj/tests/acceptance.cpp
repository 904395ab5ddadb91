// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fsl/constructions.hpp"
#include "fsl/errors.hpp"
#include "fsl/irrational.hpp"
#include "fsl/json_io.hpp"
#include "fsl/quasivar.hpp"
#include "support.hpp"

using namespace fsl;

namespace {

// Result of one criterion: pass flag plus a short detail line.
struct Verdict {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones only bump the count.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Verdict verdict(const std::string& summary) const {
    std::ostringstream os;
    os << summary << " (" << checks_ << " checks";
    if (failures_) os << ", " << failures_ << " failed; first: " << first_;
    os << ")";
    return {failures_ == 0, os.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::vector<std::int64_t>> groups_up_to(std::int64_t n) { return test::factor_multisets(n); }

Verdict bijection_census() {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t groups = 0;
  for (const auto& orders : groups_up_to(16)) {
    auto g = make_group(orders);
    auto rep = verify_bijection(g);
    ++groups;
    c.expect(rep.ok, g.describe() + ": " + rep.summary());
    c.expect(rep.representatives == rep.subgroups.size(), g.describe() + ": counts differ");
    for (const auto& s : rep.subgroups) {
      c.expect(s.stabilizer_round_trip, g.describe() + ": stabilizer round trip");
      c.expect(s.subgroup.is_full() || s.minimal == true, g.describe() + ": Maroti algebra not minimal");
    }
    c.expect(rep.pairwise_distinct, g.describe() + ": isomorphic Maroti algebras");
  }
  double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime over 60 s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  return c.verdict(std::to_string(groups) + " group presentations of order <= 16 in " + buf);
}

Verdict subgroup_counts() {
  Checker c;
  const std::vector<std::pair<std::vector<std::int64_t>, std::size_t>> expected{
      {{2, 2}, 5}, {{6}, 4}, {{8}, 4}, {{2, 4}, 8}};
  std::string line;
  for (const auto& [orders, n] : expected) {
    auto g = make_group(orders);
    auto got = subgroups(g).size();
    auto oracle = test::subgroup_count_oracle(std::vector<int>(orders.begin(), orders.end()));
    c.expect(got == n && oracle == n, g.describe() + " gives " + std::to_string(got) + ", oracle " +
                                          std::to_string(oracle));
    line += g.describe() + "=" + std::to_string(got) + " ";
  }
  return c.verdict(line + "match the closure oracle");
}

Verdict transversal_independence() {
  Checker c;
  std::mt19937 rng(20240601);
  std::size_t pairs = 0;
  for (const auto& orders : groups_up_to(12)) {
    auto g = make_group(orders);
    for (const auto& k : subgroups(g)) {
      if (k.is_trivial() || k.is_full()) continue;
      auto cs = cosets(g, k);
      auto random_t = [&] {
        std::vector<GroupElement> reps;
        for (const auto& block : cs) reps.push_back(block[rng() % block.size()]);
        return Transversal(k, std::move(reps));
      };
      for (const auto& u : {one_element_over(k), chain2_over(k)}) {
        for (int i = 0; i < 20; ++i) {
          auto t1 = random_t(), t2 = random_t();
          ++pairs;
          try {
            auto h = transversal_independence_check(t1, t2, u);
            c.expect(is_isomorphism(twisted_multiple({t1, u}), twisted_multiple({t2, u}), h.map),
                     g.describe() + ": returned map is not an isomorphism");
          } catch (const Error& e) {
            c.expect(false, g.describe() + ": " + e.what());
          }
        }
      }
    }
  }
  return c.verdict(std::to_string(pairs) + " transversal pairs with |F| <= 12");
}

Verdict separating_mechanism() {
  Checker c;
  std::size_t algebras = 0;
  for (const auto& orders : groups_up_to(16)) {
    auto g = make_group(orders);
    auto two = two_element(g);
    for (const auto& h : subgroups(g)) {
      if (h.is_full()) continue;  // the two-element algebra itself
      auto a = maroti(g, h);
      auto qi = separating_quasi_identity(a, 1);
      ++algebras;
      c.expect(holds_quasi_identity(a, qi).holds, g.describe() + ": fails in its own algebra");
      auto r = holds_quasi_identity(two, qi);
      c.expect(!r.holds && r.counterexample == std::vector<Index>{1, 0},
               g.describe() + ": two-element witness is not (1,0)");
    }
  }
  return c.verdict(std::to_string(algebras) + " Maroti algebras over proper subgroups");
}

Verdict a7_counterexample() {
  Checker c;
  std::ifstream in(std::string(FSL_TEST_DATA) + "/a7.json");
  c.expect(static_cast<bool>(in), "cannot open the stored A7");
  if (!in) return c.verdict("A7");
  auto a = algebra_from_json(Json::parse(in));
  c.expect(a == test::a7(), "stored A7 differs from the fixture");
  c.expect(validate_axioms(a).valid && test::axioms_oracle(a), "A7 fails the axioms");
  auto a0 = *a.find_label("a0");
  c.expect(test::closure_oracle(a, a0).size() == 7, "a0 does not generate A7");
  c.expect(generates(a, a0), "library disagrees on generation");
  auto v = is_minimal_free(a, a0);
  c.expect(!v.minimal, "A7 reported minimal");
  c.expect(v.counterexample == a.find_label("p"), "witness is not p");
  c.expect(test::closure_oracle(a, *a.find_label("p")).size() == 3, "<p> does not have 3 elements");
  return c.verdict("A7 valid, generated by a0, not minimal with witness p");
}

Verdict delta_round_trip() {
  Checker c;
  std::size_t pairs = 0;
  for (const auto& orders : groups_up_to(12)) {
    auto g = make_group(orders);
    for (const auto& k : subgroups(g)) {
      if (k.is_full()) continue;
      ++pairs;
      auto delta = delta_map(k, one_element_over(k));
      auto d = decompose_ku(delta.algebra, delta.generator);
      c.expect(d.k == k, g.describe() + ": K not recovered");
      c.expect(d.u.algebra.size() == 1, g.describe() + ": U not one-element");
      c.expect(is_isomorphism(d.reconstruction, delta.algebra, d.isomorphism), g.describe() + ": no isomorphism");
    }
  }
  return c.verdict(std::to_string(pairs) + " pairs (F, K) with |F| <= 12");
}

Verdict simplicity() {
  Checker c;
  std::size_t algebras = 0, oracle_checked = 0;
  // The quotient report needs a 1-generated algebra; the two-element chains
  // (Maroti over H = F, and A_1) only get their congruences counted.
  auto check = [&](const FSemilattice& a, const std::string& name) {
    ++algebras;
    std::size_t count = 0;
    if (generates(a, 1)) {
      auto rep = simplicity_and_quotient_report(a, 1);
      c.expect(rep.simple, name + " not simple");
      count = rep.congruence_count;
    } else {
      count = congruences(a).size();
    }
    c.expect(count == 2, name + " has " + std::to_string(count) + " congruences");
    if (a.size() <= 7) {
      ++oracle_checked;
      c.expect(test::congruence_oracle(a).size() == count, name + ": partition oracle disagrees");
    }
  };
  for (const auto& orders : groups_up_to(12)) {
    auto g = make_group(orders);
    for (const auto& h : subgroups(g)) check(maroti(g, h), g.describe());
  }
  for (int k = 1; k <= 6; ++k) check(a_k(k), "A_" + std::to_string(k));
  return c.verdict(std::to_string(algebras) + " algebras simple, " + std::to_string(oracle_checked) +
                   " cross-checked by the partition oracle");
}

Verdict balpha_demo() {
  using namespace irrational;
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  auto r2 = QuadraticIrrational::sqrt(2), r3 = QuadraticIrrational::sqrt(3);
  auto f = rational_between(r2, r3);
  c.expect(f == Fraction{3, 2}, "rational_between is not 3/2");
  auto rep = check_separating_identity(r2, r3, f.num, f.den, 289);
  c.expect(rep.alpha.holds && !rep.beta.holds, "verdicts are not holds/fails");
  c.expect(rep.alpha.certificate.b_squared_d == 8 && rep.alpha.certificate.a_squared == 9 &&
               rep.beta.certificate.b_squared_d == 12,
           "certificate is not 8 < 9 < 12");
  c.expect(rep.beta.failing_witness == BAlphaElement{0, 0}, "witness is not 0 + 0a");
  double secs = seconds_since(t0);
  c.expect(secs < 1.0, "runtime over 1 s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f s", secs);
  return c.verdict(std::string("3/2; 2*sqrt2 < 3 < 2*sqrt3 as 8 < 9 < 12; ") + buf);
}

Verdict mutation_fuzz() {
  Checker c;
  auto v4 = make_group({2, 2});
  const auto base = maroti(v4, Subgroup::trivial(v4));
  c.expect(base.size() == 5 && validate_axioms(base).valid, "base algebra invalid");
  std::mt19937 rng(99);
  const int rounds = 1000;
  int rejected = 0, accepted_valid = 0;
  for (int i = 0; i < rounds; ++i) {
    auto meet = base.meet_table();
    std::vector<Permutation> action(base.action().begin(), base.action().end());
    const Index n = base.size();
    if (rng() % 2 == 0) {
      Index x = rng() % n, y = rng() % n, v;
      do v = rng() % n; while (v == meet[x][y]);
      meet[x][y] = v;
    } else {
      std::size_t g = rng() % action.size();
      Index x = rng() % n, v;
      do v = rng() % n; while (v == action[g][x]);
      action[g][x] = v;
    }
    FSemilattice mutated(v4, {base.labels().begin(), base.labels().end()}, meet, action);
    auto r = validate_axioms(mutated);
    if (!r.valid) {
      ++rejected;
      c.expect(!r.axiom.empty() && !r.witness.empty(), "rejection without axiom or witness");
    } else {
      // Anything accepted must really satisfy every law.
      c.expect(test::axioms_oracle(mutated), "accepted an invalid mutation");
      ++accepted_valid;
    }
  }
  c.expect(rejected * 100 >= rounds * 99, "fewer than 99% rejected");
  return c.verdict(std::to_string(rejected) + "/" + std::to_string(rounds) + " mutations rejected, " +
                   std::to_string(accepted_valid) + " accepted and verified valid");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"subgroup/minimal-algebra bijection", bijection_census},
      {"subgroup counts", subgroup_counts},
      {"transversal independence", transversal_independence},
      {"separating quasi-identity", separating_mechanism},
      {"A7 counterexample", a7_counterexample},
      {"(K,U) round trip", delta_round_trip},
      {"simplicity", simplicity},
      {"B_alpha separation", balpha_demo},
      {"validator fuzzing", mutation_fuzz},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s [%zu] %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

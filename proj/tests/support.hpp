#pragma once

// Shared fixtures and independent brute-force oracles for the tests. The
// oracles deliberately avoid the library's algorithms: they work on raw
// tables and plain integer arithmetic.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "fsl/constructions.hpp"
#include "fsl/group.hpp"
#include "fsl/semilattice.hpp"

namespace fsl::test {

// Carrier a0 a1 a2 a3 p q o over Z4. Atoms a0..a3 are the maximal elements,
// a0 ∧ a2 = p, a1 ∧ a3 = q, p ∧ q = o; g cycles the a's and swaps p, q.
inline FSemilattice a7() {
  const std::vector<std::string> labels{"a0", "a1", "a2", "a3", "p", "q", "o"};
  // Down-sets: everything below each element, itself included.
  const std::vector<std::set<Index>> down{{0, 4, 6}, {1, 5, 6}, {2, 4, 6}, {3, 5, 6}, {4, 6}, {5, 6}, {6}};
  std::vector<std::vector<Index>> meet(7, std::vector<Index>(7));
  for (Index x = 0; x < 7; ++x) {
    for (Index y = 0; y < 7; ++y) {
      // The meet is the largest common lower bound.
      Index best = 6;
      for (Index z : down[x]) {
        if (down[y].count(z) && down[z].size() > down[best].size()) best = z;
      }
      meet[x][y] = best;
    }
  }
  return FSemilattice(GroupSpec({4}), labels, meet, {{1, 2, 3, 0, 5, 4, 6}});
}

// Mixed-radix arithmetic on raw element indices, independent of GroupSpec.
struct RawGroup {
  std::vector<int> orders;

  int size() const {
    int n = 1;
    for (int o : orders) n *= o;
    return n;
  }
  std::vector<int> digits(int x) const {
    std::vector<int> d(orders.size());
    for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
      d[i] = x % orders[i];
      x /= orders[i];
    }
    return d;
  }
  int index(const std::vector<int>& d) const {
    int x = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + ((d[i] % orders[i]) + orders[i]) % orders[i];
    return x;
  }
  int add(int a, int b) const {
    auto da = digits(a), db = digits(b);
    for (std::size_t i = 0; i < da.size(); ++i) da[i] += db[i];
    return index(da);
  }
};

// Number of subgroups, by closing every subset of size ≤ ⌈log2 |G|⌉ and
// collecting the distinct closures as bitmasks.
inline std::size_t subgroup_count_oracle(const std::vector<int>& orders) {
  RawGroup g{orders};
  const int n = g.size();
  int max_gens = 0;
  while ((1 << max_gens) < n) ++max_gens;
  std::set<std::vector<bool>> seen;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    std::vector<bool> in(n, false);
    in[0] = true;
    for (int x : pick) in[x] = true;
    for (bool grew = true; grew;) {
      grew = false;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (in[a] && in[b] && !in[g.add(a, b)]) {
            in[g.add(a, b)] = true;
            grew = true;
          }
        }
      }
    }
    seen.insert(in);
    if (static_cast<int>(pick.size()) == max_gens) return;
    for (int x = start; x < n; ++x) {
      pick.push_back(x);
      rec(x + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return seen.size();
}

// Every set partition of {0..n-1} as a restricted growth string.
inline std::vector<std::vector<std::size_t>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= blocks && b < n; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n) rec(0, 0);
  return out;
}

// Congruences found by testing every partition for compatibility.
inline std::vector<std::vector<std::size_t>> congruence_oracle(const FSemilattice& a) {
  const auto table = a.meet_table();
  std::vector<std::vector<std::size_t>> found;
  for (const auto& part : all_partitions(a.size())) {
    bool ok = true;
    for (Index x = 0; x < a.size() && ok; ++x) {
      for (Index y = 0; y < a.size() && ok; ++y) {
        if (part[x] != part[y]) continue;
        for (Index z = 0; z < a.size() && ok; ++z) ok = part[table[x][z]] == part[table[y][z]];
        for (const auto& perm : a.action()) ok = ok && part[perm[x]] == part[perm[y]];
      }
    }
    if (ok) found.push_back(part);
  }
  return found;
}

// Least subset containing `seed`, closed under meet and every generator
// permutation and its inverse, by naive fixpoint iteration.
inline std::vector<Index> closure_oracle(const FSemilattice& a, Index seed) {
  const auto table = a.meet_table();
  std::vector<bool> in(a.size(), false);
  in[seed] = true;
  for (bool grew = true; grew;) {
    grew = false;
    auto add = [&](Index z) {
      if (!in[z]) in[z] = grew = true;
    };
    for (Index x = 0; x < a.size(); ++x) {
      if (!in[x]) continue;
      for (const auto& perm : a.action()) {
        add(perm[x]);
        for (Index y = 0; y < a.size(); ++y) {
          if (perm[y] == x) add(y);
        }
      }
      for (Index y = 0; y < a.size(); ++y) {
        if (in[y]) add(table[x][y]);
      }
    }
  }
  std::vector<Index> out;
  for (Index x = 0; x < a.size(); ++x) {
    if (in[x]) out.push_back(x);
  }
  return out;
}

// All F-semilattice laws checked directly on the tables.
inline bool axioms_oracle(const FSemilattice& a) {
  const auto m = a.meet_table();
  const std::size_t n = a.size();
  for (Index x = 0; x < n; ++x) {
    if (m[x][x] != x) return false;
    for (Index y = 0; y < n; ++y) {
      if (m[x][y] != m[y][x]) return false;
      for (Index z = 0; z < n; ++z) {
        if (m[m[x][y]][z] != m[x][m[y][z]]) return false;
      }
    }
  }
  const auto& orders = a.group().orders();
  for (std::size_t i = 0; i < a.action().size(); ++i) {
    const auto& p = a.action()[i];
    std::vector<Index> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (Index x = 0; x < n; ++x) {
      if (sorted[x] != x) return false;
    }
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) {
        if (p[m[x][y]] != m[p[x]][p[y]]) return false;
      }
    }
    for (std::size_t j = 0; j < a.action().size(); ++j) {
      const auto& q = a.action()[j];
      for (Index x = 0; x < n; ++x) {
        if (p[q[x]] != q[p[x]]) return false;
      }
    }
    if (orders[i] > 0) {
      for (Index x = 0; x < n; ++x) {
        Index y = x;
        for (std::int64_t k = 0; k < orders[i]; ++k) y = p[y];
        if (y != x) return false;
      }
    }
  }
  return true;
}

// Least-denominator fraction strictly between √a and √b (a < b, both
// non-squares), by scanning denominators with exact integer comparisons.
inline std::pair<std::int64_t, std::int64_t> fraction_between_sqrt_oracle(std::int64_t a, std::int64_t b) {
  for (std::int64_t q = 1;; ++q) {
    std::int64_t p = 0;
    while (p * p <= a * q * q) ++p;  // least p with p/q > √a
    if (p * p < b * q * q) return {p, q};
  }
}

// Every factor multiset of every finite abelian group up to order `max_order`,
// listed as nondecreasing factor sequences of factors ≥ 2 (order 1 gives [1]).
inline std::vector<std::vector<std::int64_t>> factor_multisets(std::int64_t max_order) {
  std::vector<std::vector<std::int64_t>> out{{1}};
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t min_factor, std::int64_t product) {
    for (std::int64_t f = min_factor; product * f <= max_order; ++f) {
      cur.push_back(f);
      out.push_back(cur);
      rec(f, product * f);
      cur.pop_back();
    }
  };
  rec(2, 1);
  return out;
}

inline std::int64_t product(const std::vector<std::int64_t>& orders) {
  std::int64_t n = 1;
  for (auto o : orders) n *= o;
  return n;
}

}  // namespace fsl::test

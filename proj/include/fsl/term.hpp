#pragma once

// Terms in normal form: a meet of translated variables.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsl/group.hpp"

namespace fsl {

/// One meetand g(x_v).
struct Literal {
  GroupElement shift;
  std::size_t var = 0;

  // Ordered by variable first so printed terms list variables in index order.
  auto operator<=>(const Literal& o) const {
    if (auto c = var <=> o.var; c != 0) return c;
    return shift <=> o.shift;
  }
  bool operator==(const Literal&) const = default;
};

/// Nonempty set of literals, read as the meet of g(x_v) over its members.
/// Duplicates collapse and order is irrelevant, matching idempotence and
/// commutativity of the meet.
class Term {
 public:
  /// Throws ShapeError on an empty literal list.
  explicit Term(std::vector<Literal> literals);
  static Term variable(const GroupSpec& group, std::size_t var);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t max_var() const;

  /// g applied to the term; translation distributes over the meet.
  Term translated(const GroupSpec& group, const GroupElement& g) const;
  Term meet(const Term& other) const;

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

 private:
  std::vector<Literal> literals_;  // sorted, unique
};

/// An equation lhs ≈ rhs between terms.
struct Equation {
  Term lhs;
  Term rhs;

  bool operator==(const Equation&) const = default;
};

/// Horn formula: premises imply the conclusion; no premises gives an identity.
struct QuasiIdentity {
  std::vector<std::string> variables;
  std::vector<Equation> premises;
  Equation conclusion;

  bool operator==(const QuasiIdentity&) const = default;
};

std::string to_string(const Term& t, std::span<const std::string> var_names);
std::string to_string(const QuasiIdentity& qi);

/// Parses the textual grammar, e.g. `g0(x) = x -> x = x ^ y`.
///
/// Variables are single lowercase letters other than `g`, optionally followed
/// by digits. `gK(t)` applies generator K, `gK^N(t)` its N-th power (N may be
/// negative), `^` is the meet, `&` joins premises, `->` separates premises
/// from the conclusion. A formula without `->` is an identity. Shifts are
/// reduced for the finite factors of `group`.
QuasiIdentity parse_quasi_identity(std::string_view text, const GroupSpec& group);

}  // namespace fsl

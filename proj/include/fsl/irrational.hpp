#pragma once

// Exact arithmetic for the C_∞²-semilattices B_α = {m + nα} ordered as reals.

#include <compare>
#include <cstddef>
#include <optional>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fsl::irrational {

/// (p + q·√d) / r with d square-free ≥ 2, q ≠ 0, r > 0, gcd(p, q, r) = 1.
class QuadraticIrrational {
 public:
  QuadraticIrrational(std::int64_t p, std::int64_t q, std::int64_t d, std::int64_t r = 1);
  static QuadraticIrrational sqrt(std::int64_t d) { return {0, 1, d, 1}; }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  std::int64_t d() const { return d_; }
  std::int64_t r() const { return r_; }
  long double approx() const;
  std::string to_string() const;

  bool operator==(const QuadraticIrrational&) const = default;

 private:
  std::int64_t p_, q_, d_, r_;
};

/// Parses `sqrt:D` or `(P+Q*sqrt:D)/R` (also `(P-Q*sqrt:D)/R`).
QuadraticIrrational parse_irrational(std::string_view text);

/// Sign of a + b·√d computed with integers only.
int sign_of(std::int64_t a, std::int64_t b, std::int64_t d);

/// Exact order between two quadratic irrationals (possibly different d).
std::strong_ordering compare(const QuadraticIrrational& x, const QuadraticIrrational& y);
/// Exact order between q·α and p.
std::strong_ordering compare_scaled(const QuadraticIrrational& alpha, std::int64_t q, std::int64_t p);

/// The element m + nα of B_α.
struct BAlphaElement {
  std::int64_t m = 0;
  std::int64_t n = 0;

  bool operator==(const BAlphaElement&) const = default;
};

std::strong_ordering cmp(const QuadraticIrrational& alpha, BAlphaElement x, BAlphaElement y);
/// min with respect to the real order.
BAlphaElement meet(const QuadraticIrrational& alpha, BAlphaElement x, BAlphaElement y);
/// (g^i, g^j) acting on m + nα gives (m+i) + (n+j)α.
BAlphaElement act(std::int64_t i, std::int64_t j, BAlphaElement x);

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool operator==(const Fraction&) const = default;
};

/// Fraction of least denominator strictly between alpha and beta, found by
/// Stern–Brocot descent. Throws PreconditionError unless alpha < beta.
Fraction rational_between(const QuadraticIrrational& alpha, const QuadraticIrrational& beta);

/// Integer facts behind sign(qα − p): with qα − p = (A + B√d)/r, the verdict
/// follows from the signs of A and B and from comparing A² with B²·d.
struct ScaledCertificate {
  std::int64_t rational_part = 0;  // A = q·p_α − p·r_α
  std::int64_t surd_coeff = 0;     // B = q·q_α
  std::int64_t d = 0;
  std::int64_t a_squared = 0;
  std::int64_t b_squared_d = 0;
  bool below = false;              // qα < p
};

ScaledCertificate scaled_certificate(const QuadraticIrrational& alpha, std::int64_t q, std::int64_t p);

struct SampleResult {
  BAlphaElement x;
  bool holds = false;
};

struct AlgebraVerdict {
  bool holds = false;           // certified: identity holds iff qα < p
  ScaledCertificate certificate;
  std::vector<SampleResult> samples;
  std::optional<BAlphaElement> failing_witness;
};

struct SeparationReport {
  std::int64_t p = 0;
  std::int64_t q = 1;
  AlgebraVerdict alpha;
  AlgebraVerdict beta;
};

inline constexpr std::int64_t kDefaultWindow = 8;

/// Evaluates (g^p,1)(x) ∧ (1,g^q)(x) ≈ (1,g^q)(x) in B_α and B_β on
/// `sample_count` elements of the window [-window, window]², starting at
/// 0 + 0α, and certifies each verdict exactly.
SeparationReport check_separating_identity(const QuadraticIrrational& alpha, const QuadraticIrrational& beta,
                                           std::int64_t p, std::int64_t q, std::size_t sample_count,
                                           std::int64_t window = kDefaultWindow);

/// Whether y is reachable from x using the generator actions (and inverses)
/// and meets, staying within [-window, window]².
bool generated_within_window(const QuadraticIrrational& alpha, BAlphaElement x, BAlphaElement y,
                             std::int64_t window = kDefaultWindow);

}  // namespace fsl::irrational

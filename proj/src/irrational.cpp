#include "fsl/irrational.hpp"

#include <cmath>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <utility>

#include "fsl/errors.hpp"

namespace fsl::irrational {

namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw LimitExceededError("integer overflow in exact comparison");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw LimitExceededError("integer overflow in exact comparison");
  return r;
}

int sgn(i128 v) { return (v > 0) - (v < 0); }

// Sign of a + b√d for non-square d.
int sign_of_wide(i128 a, i128 b, std::int64_t d) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a² and b²d wins.
  const auto diff = checked_add(checked_mul(a, a), -checked_mul(checked_mul(b, b), d));
  return sa > 0 ? sgn(diff) : -sgn(diff);
}

std::strong_ordering to_ordering(int s) {
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool square_free(std::int64_t d) {
  for (std::int64_t f = 2; f * f <= d; ++f) {
    if (d % (f * f) == 0) return false;
  }
  return true;
}

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw LimitExceededError("value does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

QuadraticIrrational::QuadraticIrrational(std::int64_t p, std::int64_t q, std::int64_t d, std::int64_t r)
    : p_(p), q_(q), d_(d), r_(r) {
  if (d_ < 2 || !square_free(d_)) throw PreconditionError("d must be a square-free integer >= 2");
  if (q_ == 0) throw PreconditionError("q must be nonzero for an irrational value");
  if (r_ == 0) throw PreconditionError("denominator must be nonzero");
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  const auto g = std::gcd(std::gcd(p_, q_), r_);
  p_ /= g;
  q_ /= g;
  r_ /= g;
}

long double QuadraticIrrational::approx() const {
  return (static_cast<long double>(p_) + static_cast<long double>(q_) * std::sqrt(static_cast<long double>(d_))) /
         static_cast<long double>(r_);
}

std::string QuadraticIrrational::to_string() const {
  if (p_ == 0 && q_ == 1 && r_ == 1) return "sqrt:" + std::to_string(d_);
  std::ostringstream os;
  os << '(' << p_ << (q_ < 0 ? '-' : '+') << (q_ < 0 ? -q_ : q_) << "*sqrt:" << d_ << ")/" << r_;
  return os.str();
}

QuadraticIrrational parse_irrational(std::string_view text) {
  static const std::regex plain(R"(\s*sqrt:(\d+)\s*)");
  static const std::regex general(R"(\s*\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt:(\d+)\s*\)\s*/\s*(\d+)\s*)");
  const std::string s(text);
  std::smatch m;
  try {
    if (std::regex_match(s, m, plain)) return QuadraticIrrational::sqrt(std::stoll(m[1]));
    if (std::regex_match(s, m, general)) {
      const auto q = std::stoll(m[3]);
      return QuadraticIrrational(std::stoll(m[1]), m[2] == "-" ? -q : q, std::stoll(m[4]), std::stoll(m[5]));
    }
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range in irrational '" + s + "'");
  }
  throw ParseError("expected sqrt:D or (P+Q*sqrt:D)/R, got '" + s + "'");
}

int sign_of(std::int64_t a, std::int64_t b, std::int64_t d) { return sign_of_wide(a, b, d); }

std::strong_ordering compare(const QuadraticIrrational& x, const QuadraticIrrational& y) {
  // r1·r2·(x − y) = A + B√d1 + C√d2
  const i128 a = checked_add(checked_mul(x.p(), y.r()), -checked_mul(y.p(), x.r()));
  const i128 b = checked_mul(x.q(), y.r());
  const i128 c = -checked_mul(y.q(), x.r());
  if (x.d() == y.d()) return to_ordering(sign_of_wide(a, checked_add(b, c), x.d()));
  const int sx = sign_of_wide(a, b, x.d());
  const int sy = sgn(c);
  if (sx == 0) return to_ordering(sy);
  if (sx == sy) return to_ordering(sx);
  // |A + B√d1| vs |C√d2|: (A² + B²d1 − C²d2) + 2AB√d1
  const auto rat = checked_add(checked_add(checked_mul(a, a), checked_mul(checked_mul(b, b), x.d())),
                               -checked_mul(checked_mul(c, c), y.d()));
  const auto sur = checked_mul(checked_mul(2, a), b);
  const int s = sign_of_wide(rat, sur, x.d());
  return to_ordering(sx > 0 ? s : -s);
}

std::strong_ordering compare_scaled(const QuadraticIrrational& alpha, std::int64_t q, std::int64_t p) {
  const i128 a = checked_add(checked_mul(q, alpha.p()), -checked_mul(p, alpha.r()));
  const i128 b = checked_mul(q, alpha.q());
  return to_ordering(sign_of_wide(a, b, alpha.d()));
}

std::strong_ordering cmp(const QuadraticIrrational& alpha, BAlphaElement x, BAlphaElement y) {
  const i128 dm = static_cast<i128>(x.m) - y.m;
  const i128 dn = static_cast<i128>(x.n) - y.n;
  // r·(dm + dn·α) = (r·dm + p·dn) + q·dn·√d
  const auto a = checked_add(checked_mul(alpha.r(), dm), checked_mul(alpha.p(), dn));
  const auto b = checked_mul(alpha.q(), dn);
  return to_ordering(sign_of_wide(a, b, alpha.d()));
}

BAlphaElement meet(const QuadraticIrrational& alpha, BAlphaElement x, BAlphaElement y) {
  return cmp(alpha, x, y) == std::strong_ordering::greater ? y : x;
}

BAlphaElement act(std::int64_t i, std::int64_t j, BAlphaElement x) { return {x.m + i, x.n + j}; }

namespace {

// (num + shift·den)/den ≤ alpha, as a predicate on the Stern–Brocot node.
bool at_or_below(const QuadraticIrrational& alpha, std::int64_t shift, std::int64_t num, std::int64_t den) {
  const auto p = narrow(checked_add(num, checked_mul(shift, den)));
  return compare_scaled(alpha, den, p) != std::strong_ordering::less;
}

bool at_or_above(const QuadraticIrrational& beta, std::int64_t shift, std::int64_t num, std::int64_t den) {
  const auto p = narrow(checked_add(num, checked_mul(shift, den)));
  return compare_scaled(beta, den, p) != std::strong_ordering::greater;
}

// Largest k ≥ 1 with pred(k), given pred(1); pred is monotone.
template <typename Pred>
std::int64_t largest_true(Pred pred) {
  std::int64_t lo = 1, hi = 2;
  while (pred(hi)) {
    lo = hi;
    if (hi > (std::int64_t{1} << 40)) throw LimitExceededError("Stern-Brocot descent does not terminate in range");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

Fraction rational_between(const QuadraticIrrational& alpha, const QuadraticIrrational& beta) {
  if (compare(alpha, beta) != std::strong_ordering::less) {
    throw PreconditionError("rational_between needs alpha < beta, got " + alpha.to_string() + " and " +
                            beta.to_string());
  }
  // Shift so that the search runs over (0, ∞): shift < alpha < shift + 1.
  auto shift = static_cast<std::int64_t>(std::floor(alpha.approx()));
  while (compare_scaled(alpha, 1, shift) != std::strong_ordering::greater) --shift;
  while (compare_scaled(alpha, 1, shift + 1) == std::strong_ordering::greater) ++shift;

  std::int64_t ln = 0, ld = 1, rn = 1, rd = 0;
  while (true) {
    const auto mn = ln + rn, md = ld + rd;
    if (at_or_below(alpha, shift, mn, md)) {
      const auto k = largest_true([&](std::int64_t k) {
        return at_or_below(alpha, shift, narrow(ln + checked_mul(k, rn)), narrow(ld + checked_mul(k, rd)));
      });
      ln += k * rn;
      ld += k * rd;
    } else if (at_or_above(beta, shift, mn, md)) {
      const auto k = largest_true([&](std::int64_t k) {
        return at_or_above(beta, shift, narrow(rn + checked_mul(k, ln)), narrow(rd + checked_mul(k, ld)));
      });
      rn += k * ln;
      rd += k * ld;
    } else {
      return Fraction{narrow(checked_add(mn, checked_mul(shift, md))), md};
    }
  }
}

ScaledCertificate scaled_certificate(const QuadraticIrrational& alpha, std::int64_t q, std::int64_t p) {
  ScaledCertificate c;
  const i128 a = checked_add(checked_mul(q, alpha.p()), -checked_mul(p, alpha.r()));
  const i128 b = checked_mul(q, alpha.q());
  c.rational_part = narrow(a);
  c.surd_coeff = narrow(b);
  c.d = alpha.d();
  c.a_squared = narrow(checked_mul(a, a));
  c.b_squared_d = narrow(checked_mul(checked_mul(b, b), alpha.d()));
  c.below = sign_of_wide(a, b, alpha.d()) < 0;
  return c;
}

namespace {

std::vector<BAlphaElement> sample_points(std::size_t count, std::int64_t window) {
  std::vector<BAlphaElement> out;
  if (count == 0) return out;
  out.push_back({0, 0});
  for (std::int64_t m = -window; m <= window && out.size() < count; ++m) {
    for (std::int64_t n = -window; n <= window && out.size() < count; ++n) {
      if (m != 0 || n != 0) out.push_back({m, n});
    }
  }
  return out;
}

AlgebraVerdict evaluate(const QuadraticIrrational& alpha, std::int64_t p, std::int64_t q,
                        const std::vector<BAlphaElement>& points) {
  AlgebraVerdict v;
  v.certificate = scaled_certificate(alpha, q, p);
  v.holds = v.certificate.below;
  for (const auto& x : points) {
    const auto rhs = act(0, q, x);
    const bool ok = meet(alpha, act(p, 0, x), rhs) == rhs;
    v.samples.push_back({x, ok});
    if (!ok && !v.failing_witness) v.failing_witness = x;
    if (ok != v.holds) throw VerificationError("sampled value disagrees with the exact certificate");
  }
  return v;
}

}  // namespace

SeparationReport check_separating_identity(const QuadraticIrrational& alpha, const QuadraticIrrational& beta,
                                           std::int64_t p, std::int64_t q, std::size_t sample_count,
                                           std::int64_t window) {
  if (q <= 0) throw PreconditionError("q must be positive");
  if (compare_scaled(alpha, q, p) != std::strong_ordering::less ||
      compare_scaled(beta, q, p) != std::strong_ordering::greater) {
    throw PreconditionError("need alpha < p/q < beta");
  }
  const auto points = sample_points(sample_count, window);
  return SeparationReport{p, q, evaluate(alpha, p, q, points), evaluate(beta, p, q, points)};
}

bool generated_within_window(const QuadraticIrrational& alpha, BAlphaElement x, BAlphaElement y,
                             std::int64_t window) {
  auto inside = [&](BAlphaElement e) { return std::abs(e.m) <= window && std::abs(e.n) <= window; };
  if (!inside(x) || !inside(y)) return false;
  std::set<std::pair<std::int64_t, std::int64_t>> seen{{x.m, x.n}};
  std::vector<BAlphaElement> members{x};
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto e = members[i];
    if (e == y) return true;
    auto add = [&](BAlphaElement f) {
      if (inside(f) && seen.insert({f.m, f.n}).second) members.push_back(f);
    };
    add(act(1, 0, e));
    add(act(-1, 0, e));
    add(act(0, 1, e));
    add(act(0, -1, e));
    // Meets of members are members again, so they never add new elements.
    for (std::size_t j = 0; j < i; ++j) add(meet(alpha, e, members[j]));
  }
  return false;
}

}  // namespace fsl::irrational

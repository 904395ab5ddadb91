#include <doctest.h>

#include <random>

#include "fsl/errors.hpp"
#include "fsl/irrational.hpp"
#include "support.hpp"

using namespace fsl;
using namespace fsl::irrational;

TEST_CASE("construction and parsing") {
  auto a = QuadraticIrrational(2, 4, 3, -6);
  CHECK(a.p() == -1);
  CHECK(a.q() == -2);
  CHECK(a.r() == 3);
  CHECK(a.to_string() == "(-1-2*sqrt:3)/3");
  CHECK(parse_irrational(a.to_string()) == a);
  CHECK(parse_irrational("sqrt:2") == QuadraticIrrational::sqrt(2));
  CHECK(parse_irrational("(1+1*sqrt:5)/2").approx() == doctest::Approx(1.6180339887));
  CHECK_THROWS_AS(QuadraticIrrational::sqrt(4), PreconditionError);
  CHECK_THROWS_AS(QuadraticIrrational::sqrt(12), PreconditionError);
  CHECK_THROWS_AS(QuadraticIrrational(1, 0, 2), PreconditionError);
  CHECK_THROWS_AS(parse_irrational("1.414"), ParseError);
  CHECK_THROWS_AS(parse_irrational("sqrt:"), ParseError);
}

TEST_CASE("exact comparison in B_alpha") {
  auto r2 = QuadraticIrrational::sqrt(2), r3 = QuadraticIrrational::sqrt(3);
  CHECK(cmp(r2, {3, 0}, {0, 2}) == std::strong_ordering::greater);
  CHECK(cmp(r3, {3, 0}, {0, 2}) == std::strong_ordering::less);
  CHECK(cmp(r2, {5, -7}, {5, -7}) == std::strong_ordering::equal);
  CHECK(sign_of(3, -2, 2) == 1);
  CHECK(sign_of(3, -2, 3) == -1);
  CHECK(act(0, 0, {4, 5}) == BAlphaElement{4, 5});
  CHECK(act(1, 0, {0, 0}) == BAlphaElement{1, 0});
  CHECK(act(-1, 2, {3, 1}) == BAlphaElement{2, 3});
}

TEST_CASE("cmp agrees with long double and is order preserving") {
  std::mt19937_64 rng(42);
  const std::vector<QuadraticIrrational> alphas{QuadraticIrrational::sqrt(2), QuadraticIrrational::sqrt(3),
                                                QuadraticIrrational(1, 1, 5, 2), QuadraticIrrational(-3, 2, 7, 5)};
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  int mismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto& alpha = alphas[static_cast<std::size_t>(i) % alphas.size()];
    BAlphaElement x{coord(rng), coord(rng)}, y{coord(rng), coord(rng)};
    auto c = cmp(alpha, x, y);
    long double dx = x.m + x.n * alpha.approx(), dy = y.m + y.n * alpha.approx();
    auto f = dx < dy ? std::strong_ordering::less : dx > dy ? std::strong_ordering::greater : std::strong_ordering::equal;
    if (c != f) ++mismatches;
    // Strict total order: equality only for equal elements, and antisymmetry.
    CHECK((c == std::strong_ordering::equal) == (x == y));
    CHECK(cmp(alpha, y, x) == (0 <=> c));
    const auto i1 = coord(rng), j1 = coord(rng);
    CHECK(cmp(alpha, act(i1, j1, x), act(i1, j1, y)) == c);
    CHECK(act(i1, j1, meet(alpha, x, y)) == meet(alpha, act(i1, j1, x), act(i1, j1, y)));
  }
  CHECK(mismatches == 0);
}

TEST_CASE("comparing different quadratic irrationals") {
  auto r2 = QuadraticIrrational::sqrt(2), r3 = QuadraticIrrational::sqrt(3);
  CHECK(compare(r2, r3) == std::strong_ordering::less);
  CHECK(compare(r3, r2) == std::strong_ordering::greater);
  CHECK(compare(r2, r2) == std::strong_ordering::equal);
  CHECK(compare(QuadraticIrrational(1, 1, 2), QuadraticIrrational::sqrt(5)) == std::strong_ordering::greater);
  CHECK(compare(QuadraticIrrational(0, 2, 2), QuadraticIrrational(0, 1, 7)) == std::strong_ordering::greater);
  std::mt19937 rng(9);
  std::vector<std::int64_t> ds{2, 3, 5, 6, 7, 10, 11};
  for (int i = 0; i < 2000; ++i) {
    auto pick = [&] {
      auto q = static_cast<std::int64_t>(rng() % 9) - 4;
      return QuadraticIrrational(static_cast<std::int64_t>(rng() % 21) - 10, q == 0 ? 1 : q, ds[rng() % ds.size()],
                                 1 + static_cast<std::int64_t>(rng() % 6));
    };
    auto x = pick(), y = pick();
    auto c = compare(x, y);
    long double diff = x.approx() - y.approx();
    if (diff > 1e-12L) CHECK(c == std::strong_ordering::greater);
    if (diff < -1e-12L) CHECK(c == std::strong_ordering::less);
  }
}

TEST_CASE("rational between, least denominator") {
  auto r2 = QuadraticIrrational::sqrt(2), r3 = QuadraticIrrational::sqrt(3);
  CHECK(rational_between(r2, r3) == Fraction{3, 2});
  CHECK(rational_between(r2, QuadraticIrrational(0, 2, 2)) == Fraction{2, 1});
  CHECK_THROWS_AS(rational_between(r3, r2), PreconditionError);
  CHECK_THROWS_AS(rational_between(r2, r2), PreconditionError);

  const std::vector<std::int64_t> free{2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 101, 102, 1001, 1003};
  for (std::size_t i = 0; i < free.size(); ++i) {
    for (std::size_t j = i + 1; j < free.size(); ++j) {
      auto [p, q] = test::fraction_between_sqrt_oracle(free[i], free[j]);
      CAPTURE(free[i]);
      CAPTURE(free[j]);
      CHECK(rational_between(QuadraticIrrational::sqrt(free[i]), QuadraticIrrational::sqrt(free[j])) == Fraction{p, q});
    }
  }
  // Negative values and tight gaps.
  auto neg = rational_between(QuadraticIrrational(0, -1, 3), QuadraticIrrational(0, -1, 2));
  CHECK(neg == Fraction{-3, 2});
  auto tight = rational_between(QuadraticIrrational(0, 1000, 2), QuadraticIrrational(1, 1000, 2));
  CHECK(compare_scaled(QuadraticIrrational(0, 1000, 2), tight.den, tight.num) == std::strong_ordering::less);
  CHECK(compare_scaled(QuadraticIrrational(1, 1000, 2), tight.den, tight.num) == std::strong_ordering::greater);
}

TEST_CASE("separating identity") {
  auto r2 = QuadraticIrrational::sqrt(2), r3 = QuadraticIrrational::sqrt(3);
  auto rep = check_separating_identity(r2, r3, 3, 2, 50);
  CHECK(rep.alpha.holds);
  CHECK_FALSE(rep.beta.holds);
  CHECK(rep.alpha.certificate.b_squared_d == 8);
  CHECK(rep.alpha.certificate.a_squared == 9);
  CHECK(rep.beta.certificate.b_squared_d == 12);
  REQUIRE(rep.beta.failing_witness);
  CHECK(*rep.beta.failing_witness == BAlphaElement{0, 0});
  CHECK(rep.alpha.samples.size() == 50);
  for (const auto& s : rep.alpha.samples) CHECK(s.holds);
  for (const auto& s : rep.beta.samples) CHECK_FALSE(s.holds);
  CHECK_THROWS_AS(check_separating_identity(r2, r2, 3, 2, 5), PreconditionError);
  CHECK_THROWS_AS(check_separating_identity(r2, r3, 2, 1, 5), PreconditionError);

  // The verdict depends only on qα < p.
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto alpha = QuadraticIrrational(static_cast<std::int64_t>(rng() % 11) - 5, 1 + static_cast<std::int64_t>(rng() % 3),
                                     std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4], 1 + static_cast<std::int64_t>(rng() % 4));
    std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 5);
    std::int64_t p = static_cast<std::int64_t>(rng() % 31) - 15;
    auto cert = scaled_certificate(alpha, q, p);
    CHECK(cert.below == (compare_scaled(alpha, q, p) == std::strong_ordering::less));
    for (std::int64_t m = -3; m <= 3; ++m) {
      for (std::int64_t n = -3; n <= 3; ++n) {
        BAlphaElement x{m, n};
        bool holds = meet(alpha, act(p, 0, x), act(0, q, x)) == act(0, q, x);
        CHECK(holds == cert.below);
      }
    }
  }
}

TEST_CASE("B_alpha is generated by each element within the window") {
  auto r2 = QuadraticIrrational::sqrt(2);
  for (std::int64_t m = -2; m <= 2; ++m) {
    for (std::int64_t n = -2; n <= 2; ++n) {
      CHECK(generated_within_window(r2, {m, n}, {-8, 8}));
      CHECK(generated_within_window(r2, {m, n}, {5, -3}));
    }
  }
  CHECK_FALSE(generated_within_window(r2, {0, 0}, {9, 0}));
}

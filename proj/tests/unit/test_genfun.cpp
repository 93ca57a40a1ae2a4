#include <doctest.h>

#include <cmath>

#include "invwalk/chain_dp.hpp"
#include "invwalk/common.hpp"
#include "invwalk/formulas.hpp"
#include "invwalk/genfun.hpp"
#include "oracles.hpp"

using namespace invwalk;

namespace {

std::vector<mpq_class> as_rationals(const std::vector<long long>& v) {
  std::vector<mpq_class> out;
  for (long long x : v) {
    out.emplace_back(static_cast<long>(x));
  }
  return out;
}

Polynomial poly(std::initializer_list<long long> coeffs) { return Polynomial(as_rationals(coeffs)); }

// The printed closed forms, expanded from their factored shape.
struct Printed {
  std::vector<long long> num;
  std::vector<long long> den;
};

Printed printed(int m) {
  using oracle::poly_mul;
  switch (m) {
    case 1:
      return {{0, 1}, poly_mul({{1, -1}, {1, 1}})};
    case 2:
      return {poly_mul({{0, 1}, {2, 1}}), poly_mul({{1, -1}, {2, -1}, {1, 1}})};
    case 3:
      return {poly_mul({{0, 3}, {27, 9, -7, -1}}), poly_mul({{1, -1}, {9, 6, -1}, {9, -6, -1}})};
    default:
      return {poly_mul({{0, 1}, {256, -192, -48, 44, -5}}), poly_mul({{1, -1}, {16, 0, -5}, {16, -20, 5}})};
  }
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Polynomial a = poly({1, 2, 3});
  const Polynomial b = poly({-1, 1});
  CHECK((a * b) == poly({-1, -1, -1, 3}));
  CHECK((a + b) == poly({0, 3, 3}));
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  CHECK(a(mpq_class(2)) == 17);
  CHECK(a.leading() == 3);
  CHECK(a.coeff(7) == 0);

  Polynomial q, r;
  Polynomial::divmod(a * b + poly({5}), b, q, r);
  CHECK(q == a);
  CHECK(r == poly({5}));
  CHECK_THROWS_AS(Polynomial::divmod(a, Polynomial(), q, r), std::domain_error);

  CHECK(Polynomial::gcd(a * b, b * poly({2, 7})) == poly({-1, 1}));
  CHECK(Polynomial::gcd(a, b) == poly({1}));
}

TEST_CASE("polynomial text form") {
  CHECK(poly({0, 1}).to_string() == "t");
  CHECK(poly({1, 0, -1}).to_string() == "1 - t^2");
  CHECK(poly({0, -2, 1}).to_string() == "-2*t + t^2");
  CHECK(Polynomial::monomial(mpq_class(1, 2), 3).to_string() == "1/2*t^3");
  CHECK(Polynomial().to_string() == "0");
}

TEST_CASE("rational functions are reduced and normalized") {
  // (t - t^2) / (2 - 2t^2) = t / (2 + 2t) -> t/2 / (1 + t)
  const RationalFunction rf(poly({0, 1, -1}), poly({2, 0, -2}));
  CHECK(rf.denominator() == poly({1, 1}));
  CHECK(rf.numerator() == Polynomial(std::vector<mpq_class>{0, mpq_class(1, 2)}));

  const RationalFunction neg(poly({0, 3}), poly({-6, 3}));
  CHECK(neg.denominator() == poly({2, -1}));
  CHECK(neg.numerator() == poly({0, -1}));
  CHECK_THROWS(RationalFunction(poly({1}), Polynomial()));
}

TEST_CASE("build_gf reproduces the printed I_1 .. I_4") {
  for (int m = 1; m <= 4; ++m) {
    const auto rf = build_gf(m);
    const auto p = printed(m);
    CHECK_MESSAGE(rf.numerator() == Polynomial(as_rationals(p.num)), "m=" << m);
    CHECK_MESSAGE(rf.denominator() == Polynomial(as_rationals(p.den)), "m=" << m);
  }
  CHECK(build_gf(1).to_string() == "t / (1 - t^2)");
  CHECK(build_gf(2).to_string() == "(2*t + t^2) / (2 - t - 2*t^2 + t^3)");
}

TEST_CASE("build_gf dimension limit") {
  CHECK_NOTHROW(build_gf(5));
  CHECK_THROWS_AS(build_gf(16), BudgetExceeded);
}

TEST_CASE("series examples") {
  const auto s1 = series(build_gf(1), 5);
  CHECK(s1 == std::vector<mpq_class>{0, 1, 0, 1, 0, 1});
  const auto s2 = series(build_gf(2), 4);
  CHECK(s2 == std::vector<mpq_class>{0, 1, 1, mpq_class(3, 2), mpq_class(5, 4)});
  const RationalFunction c(poly({3, 1}), poly({2, 5}));
  CHECK(series(c, 0) == std::vector<mpq_class>{mpq_class(3, 2)});
}

TEST_CASE("series of build_gf equals the dp") {
  for (int m = 1; m <= 8; ++m) {
    const auto coeffs = series(build_gf(m), 30);
    const auto dp = expected_inversions_dp_sequence(m, 30);
    for (int n = 0; n <= 30; ++n) {
      CHECK_MESSAGE(coeffs[n] == dp[n], "m=" << m << " n=" << n);
    }
  }
}

TEST_CASE("aperiodic generating function") {
  const auto i2 = build_gf(2);
  CHECK(aperiodic_gf(i2, 2, 1) == i2);

  const auto half = series(aperiodic_gf(build_gf(1), 1, mpq_class(1, 2)), 6);
  CHECK(half[0] == 0);
  for (int n = 1; n <= 6; ++n) {
    CHECK(half[n] == mpq_class(1, 2));
  }
  CHECK(series(aperiodic_gf(i2, 2, mpq_class(2, 3)), 1)[1] == mpq_class(2, 3));

  for (int m = 1; m <= 5; ++m) {
    const auto rf = build_gf(m);
    for (const mpq_class& p : {mpq_class(1, 2), mpq_class(m, m + 1)}) {
      const auto coeffs = series(aperiodic_gf(rf, m, p), 15);
      for (int n = 0; n <= 15; ++n) {
        CHECK(coeffs[n] == aperiodic_expected(m, n, p));
      }
    }
  }
  CHECK_THROWS_AS(aperiodic_gf(i2, 2, 0), std::invalid_argument);
}

TEST_CASE("poles are 1 and reciprocals of certified eigenvalues") {
  for (int m = 1; m <= 8; ++m) {
    const auto rf = build_gf(m);
    const auto rep = pole_check(rf, build_table<Real128>(m));
    CHECK_MESSAGE(rep.pass, "m=" << m << " matched " << rep.matched << "/" << rep.degree);
    CHECK(rep.degree == rf.denominator().degree());
  }
}

TEST_CASE("pole examples") {
  const auto r1 = pole_check(build_gf(1), build_table<Real128>(1));
  CHECK(r1.degree == 2);
  std::vector<double> xs;
  for (const auto& pm : r1.matches) {
    xs.push_back(pm.x);
  }
  std::sort(xs.begin(), xs.end());
  REQUIRE(xs.size() == 2);
  CHECK(xs[0] == doctest::Approx(-1.0));
  CHECK(xs[1] == doctest::Approx(1.0));

  // m = 2: roots of the denominator are t = 1, 2, -1, i.e. x = 1, 1/2, -1.
  const auto r2 = pole_check(build_gf(2), build_table<Real128>(2));
  CHECK(r2.pass);
  for (const auto& pm : r2.matches) {
    const bool known = std::fabs(pm.x - 1) < 1e-12 || std::fabs(pm.x - 0.5) < 1e-12 || std::fabs(pm.x + 1) < 1e-12;
    CHECK(known);
  }
}

TEST_CASE("pole_check reports an unmatched root") {
  // Multiply the m = 3 denominator by (1 - t/7): x = 1/7 is not spectral.
  const auto rf = build_gf(3);
  const RationalFunction bad(rf.numerator(), rf.denominator() * Polynomial(std::vector<mpq_class>{1, mpq_class(-1, 7)}));
  const auto rep = pole_check(bad, build_table<Real128>(3));
  CHECK_FALSE(rep.pass);
  CHECK(rep.matched == rep.degree - 1);
}

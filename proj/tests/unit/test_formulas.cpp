#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "invwalk/chain_dp.hpp"
#include "invwalk/common.hpp"
#include "invwalk/formulas.hpp"
#include "oracles.hpp"

using namespace invwalk;

namespace {

ClosedFormOptions with(ClosedFormVariant v, int precision) {
  ClosedFormOptions o;
  o.variant = v;
  o.precision = precision;
  return o;
}

// Binomial expansion of the lazy chain, from brute-force I_{m,k}.
mpq_class lazy_oracle(int m, int n, const mpq_class& p) {
  mpq_class total = 0;
  mpz_class binom = 1;
  for (int k = 0; k <= n; ++k) {
    mpq_class w = binom;
    for (int i = 0; i < k; ++i) {
      w *= p;
    }
    for (int i = 0; i < n - k; ++i) {
      w *= 1 - p;
    }
    total += w * oracle::brute_force_average(m, k);
    binom = binom * (n - k) / (k + 1);
  }
  return total;
}

}  // namespace

TEST_CASE("closed form examples") {
  CHECK(closed_form(1, 1).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(closed_form(2, 2).value - 1.0) <= 1e-12);
  CHECK(std::fabs(closed_form(3, 1000000).value - 3.0) <= 1e-9);
}

TEST_CASE("closed form at n = 0 is zero") {
  for (int m = 1; m <= 60; ++m) {
    for (int bits : {53, 128}) {
      CHECK(std::fabs(closed_form(m, 0, with(ClosedFormVariant::kTheorem1, bits)).value) <=
            std::ldexp(std::pow(m + 1.0, 3), 8 - bits));
    }
  }
}

TEST_CASE("three variants agree") {
  for (int m = 1; m <= 50; m += (m < 10 ? 1 : 7)) {
    for (std::uint64_t n : {0, 1, 5, 50, 500}) {
      for (int bits : {53, 128}) {
        const double a = closed_form(m, n, with(ClosedFormVariant::kTheorem1, bits)).value;
        const double b = closed_form(m, n, with(ClosedFormVariant::kSer2, bits)).value;
        const double c = closed_form(m, n, with(ClosedFormVariant::kSer3, bits)).value;
        const double tol = std::ldexp(std::pow(m, 3), 8 - bits);
        CHECK_MESSAGE(std::fabs(a - b) <= tol, "m=" << m << " n=" << n << " bits=" << bits);
        CHECK_MESSAGE(std::fabs(a - c) <= tol, "m=" << m << " n=" << n << " bits=" << bits);
      }
    }
  }
}

TEST_CASE("closed form matches the dp at 128 bits") {
  ClosedFormOptions o;
  o.precision = 128;
  for (int m = 1; m <= 50; m += (m < 12 ? 1 : 6)) {
    const auto dp = expected_inversions_dp_sequence(m, 200);
    for (int n = 0; n <= 200; n += (n < 30 ? 1 : 17)) {
      const double exact = dp[n].get_d();
      CHECK_MESSAGE(std::fabs(closed_form(m, n, o).value - exact) <= 1e-9 * std::max(1.0, exact),
                    "m=" << m << " n=" << n);
    }
  }
}

TEST_CASE("symmetric half loop is bit-identical to the full loop") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = gen.range(1, 120);
    const std::uint64_t n = static_cast<std::uint64_t>(gen.range(0, 5000));
    ClosedFormOptions half;
    ClosedFormOptions full;
    full.exploit_symmetry = false;
    const auto t = build_table<double>(m);
    CHECK(closed_form_value(t, n, half).value == closed_form_value(t, n, full).value);
    const auto t128 = build_table<Real128>(m);
    CHECK(closed_form_value(t128, n, half).value == closed_form_value(t128, n, full).value);
  }
}

TEST_CASE("materialized and row-wise powers give the same value") {
  for (int m : {4, 33, 200}) {
    ClosedFormOptions a;
    ClosedFormOptions b;
    b.materialize_x = false;
    const auto t = build_table<double>(m);
    CHECK(closed_form_value(t, 12345, a).value == closed_form_value(t, 12345, b).value);
  }
}

TEST_CASE("precision tiers") {
  CHECK(closed_form(5, 10, with(ClosedFormVariant::kTheorem1, 53)).precision == 53);
  CHECK(closed_form(5, 10, with(ClosedFormVariant::kTheorem1, 100)).precision == 128);
  CHECK(closed_form(5, 10, with(ClosedFormVariant::kTheorem1, 256)).precision == 256);
  CHECK_THROWS_AS(closed_form(5, 10, with(ClosedFormVariant::kTheorem1, 52)), std::invalid_argument);
  CHECK_THROWS_AS(closed_form(5, 10, with(ClosedFormVariant::kTheorem1, 300)), std::invalid_argument);
  const auto r = closed_form(7, 9, with(ClosedFormVariant::kTheorem1, 256));
  const double exact = expected_inversions_dp(7, 9).get_d();
  CHECK(std::fabs(r.value - exact) <= 1e-15 * exact);
  CHECK(r.decimal.size() > 60);
}

TEST_CASE("saturation returns the limit exactly") {
  const auto r = closed_form(10, 1000000000000ULL);
  CHECK(r.saturated);
  CHECK(r.value == 27.5);
  CHECK_FALSE(closed_form(10, 100).saturated);
}

TEST_CASE("variant names round trip") {
  for (auto v : {ClosedFormVariant::kTheorem1, ClosedFormVariant::kSer2, ClosedFormVariant::kSer3}) {
    CHECK(parse_variant(variant_name(v)) == v);
  }
  CHECK_THROWS_AS(parse_variant("ser4"), std::invalid_argument);
}

TEST_CASE("eriksen examples") {
  CHECK(eriksen(4, 0) == 0);
  CHECK(eriksen(2, 1) == 1);
  CHECK(eriksen_g(1, 2) == 2);
  CHECK(eriksen_h(1, 2) == 1);
  CHECK(eriksen(2, 3) == mpq_class(3, 2));
}

TEST_CASE("eriksen equals the dp") {
  for (int m = 1; m <= 8; ++m) {
    const auto dp = expected_inversions_dp_sequence(m, 25);
    for (int n = 0; n <= 25; ++n) {
      CHECK_MESSAGE(eriksen(m, n) == dp[n], "m=" << m << " n=" << n);
    }
  }
}

TEST_CASE("eriksen equals brute force") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 0; n <= 7; ++n) {
      CHECK(eriksen(m, n) == oracle::brute_force_average(m, n));
    }
  }
}

TEST_CASE("eriksen respects the budget") {
  ::setenv("INVWALK_BUDGET", "1e5", 1);
  CHECK_THROWS_AS(eriksen(5, 200), BudgetExceeded);
  ::unsetenv("INVWALK_BUDGET");
}

TEST_CASE("bounds examples") {
  const auto b0 = bounds(3, 0);
  CHECK(b0.lower == 0);
  const double c0 = std::cos(M_PI / 8);
  const double s0 = std::sin(M_PI / 8);
  CHECK(b0.upper == doctest::Approx(3 - c0 * c0 / (32 * std::pow(s0, 4))).epsilon(1e-14));
  CHECK(b0.upper == doctest::Approx(1.756).epsilon(1e-3));
  const auto big = bounds(5, 100000);
  CHECK(std::fabs(big.lower - 7.5) <= 1e-3);
  CHECK(std::fabs(big.upper - 7.5) <= 1e-3);
  CHECK_THROWS_AS(bounds(2, 5), std::domain_error);
}

TEST_CASE("bounds sandwich the dp") {
  for (int m = 3; m <= 12; ++m) {
    const auto dp = expected_inversions_dp_sequence(m, 300);
    for (int n = 0; n <= 300; ++n) {
      const auto b = bounds(m, n);
      CHECK(b.lower <= b.upper);
      CHECK_MESSAGE(sandwich_holds(m, n, dp[n]), "m=" << m << " n=" << n);
    }
  }
}

TEST_CASE("sandwich detects values outside the bounds") {
  CHECK_FALSE(sandwich_holds(4, 10, mpq_class(5)));   // limit is 5, above the upper bound
  CHECK_FALSE(sandwich_holds(4, 10, mpq_class(0)));
  CHECK(sandwich_holds(4, 10, expected_inversions_dp(4, 10)));
}

TEST_CASE("aperiodic expectation") {
  CHECK(aperiodic_expected(4, 0, mpq_class(1, 3)) == 0);
  CHECK(aperiodic_expected(1, 2, mpq_class(1, 2)) == mpq_class(1, 2));
  for (int m = 1; m <= 3; ++m) {
    for (int n = 0; n <= 6; ++n) {
      CHECK(aperiodic_expected(m, n, 1) == oracle::brute_force_average(m, n));
      CHECK(aperiodic_expected(m, n, default_lazy_p(m)) == lazy_oracle(m, n, mpq_class(m, m + 1)));
    }
  }
  CHECK(default_lazy_p(4) == mpq_class(4, 5));
  CHECK_THROWS_AS(aperiodic_expected(3, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(aperiodic_expected(3, 3, mpq_class(3, 2)), std::invalid_argument);
}

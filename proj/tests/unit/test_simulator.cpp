#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "invwalk/chain_dp.hpp"
#include "invwalk/common.hpp"
#include "invwalk/formulas.hpp"
#include "invwalk/philox.hpp"
#include "invwalk/simulator.hpp"
#include "oracles.hpp"

using namespace invwalk;

TEST_CASE("philox known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("trial streams are deterministic and distinct") {
  TrialStream a(42, 7);
  TrialStream b(42, 7);
  TrialStream c(42, 8);
  TrialStream d(43, 7);
  std::set<std::uint64_t> seen;
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_c = differs_c || x != c.next_u64();
    differs_d = differs_d || x != d.next_u64();
    seen.insert(x);
  }
  CHECK(differs_c);
  CHECK(differs_d);
  CHECK(seen.size() == 64);
}

TEST_CASE("uniform draws stay in range and cover it") {
  TrialStream s(1, 0);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = s.uniform(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) {
    // 4 sigma of a binomial(70000, 1/7)
    CHECK(std::abs(c - 10000) < 4 * 93);
  }
  CHECK(s.uniform(1) == 0);
}

TEST_CASE("simulate_once examples") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    TrialStream s(seed, 0);
    CHECK(simulate_once(1, 7, s) == 1);
    CHECK(simulate_once(6, 0, s) == 0);
    CHECK(simulate_once(2, 1, s) == 1);
  }
}

TEST_CASE("parity and range") {
  oracle::Gen gen(99);
  for (int i = 0; i < 400; ++i) {
    const int m = gen.range(1, 30);
    const std::uint64_t n = gen.range(0, 500);
    TrialStream s(gen.next(), i);
    const std::uint64_t count = simulate_once(m, n, s);
    CHECK(count % 2 == n % 2);
    CHECK(count <= static_cast<std::uint64_t>(m) * (m + 1) / 2);
  }
}

TEST_CASE("lazy rule threshold") {
  const LazyRule half(0.5);
  CHECK_FALSE(half.always);
  CHECK(half.threshold == (std::uint64_t{1} << 63));
  CHECK(LazyRule(1.0).always);
  CHECK_THROWS_AS(LazyRule(0.0), std::invalid_argument);
  CHECK_THROWS_AS(LazyRule(1.5), std::invalid_argument);
}

TEST_CASE("lazy chain loses strict parity but keeps the range") {
  TrialStream s(5, 0);
  const LazyRule rule(0.5);
  bool odd_at_even_n = false;
  for (int i = 0; i < 200; ++i) {
    const auto count = simulate_once(6, 10, s, rule);
    CHECK(count <= 21);
    odd_at_even_n = odd_at_even_n || count % 2 == 1;
  }
  CHECK(odd_at_even_n);
}

TEST_CASE("monte carlo on the deterministic chain") {
  const auto r = monte_carlo(1, 6, 1000, 123);
  CHECK(r.mean == 0);
  CHECK(r.variance == 0);
  CHECK(r.standard_error == 0);
  CHECK(r.trials == 1000);
}

TEST_CASE("monte carlo agrees with the dp") {
  const auto r = monte_carlo(10, 50, 100000, 42, std::nullopt, 4);
  const double exact = expected_inversions_dp(10, 50).get_d();
  CHECK(std::fabs(r.mean - exact) <= 4 * r.standard_error);
  CHECK(r.standard_error == doctest::Approx(std::sqrt(r.variance / r.trials)).epsilon(1e-15));
  CHECK(r.mean >= 0);
  CHECK(r.mean <= 55);
}

TEST_CASE("summaries do not depend on workers or repetition") {
  const auto a = monte_carlo(7, 40, 5000, 42, std::nullopt, 1);
  const auto b = monte_carlo(7, 40, 5000, 42, std::nullopt, 4);
  const auto c = monte_carlo(7, 40, 5000, 42, std::nullopt, 3);
  const auto d = monte_carlo(7, 40, 5000, 42, std::nullopt, 1);
  CHECK(a.same_result(b));
  CHECK(a.same_result(c));
  CHECK(a.same_result(d));
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK_FALSE(a.same_result(monte_carlo(7, 40, 5000, 43)));
}

TEST_CASE("lazy monte carlo agrees with the binomial expectation") {
  const int m = 6;
  const std::uint64_t n = 30;
  const double p = static_cast<double>(m) / (m + 1);
  const auto r = monte_carlo(m, n, 100000, 8, p, 4);
  REQUIRE(r.lazy_p);
  const double exact = aperiodic_expected(m, n, default_lazy_p(m)).get_d();
  CHECK(std::fabs(r.mean - exact) <= 4 * r.standard_error);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(monte_carlo(3, 3, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo(3, 3, 10, 0, std::nullopt, 0), std::invalid_argument);
  ::setenv("INVWALK_BUDGET", "1000", 1);
  CHECK_THROWS_AS(monte_carlo(3, 100, 11, 0), BudgetExceeded);
  ::unsetenv("INVWALK_BUDGET");
}

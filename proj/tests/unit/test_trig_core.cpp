#include <doctest.h>

#include <cmath>

#include "invwalk/trig_core.hpp"
#include "oracles.hpp"

using namespace invwalk;

TEST_CASE("table entries for small m") {
  const auto t1 = build_table<double>(1);
  CHECK(t1.c[0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(t1.c[1] == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(t1.s[0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(t1.s[1] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));

  const auto t2 = build_table<double>(2);
  CHECK(t2.c[0] == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(t2.c[1] == 0.0);
  CHECK(t2.c[2] == doctest::Approx(-std::sqrt(3.0) / 2).epsilon(1e-15));

  const auto t3 = build_table<double>(3);
  CHECK(std::fabs(t3.c[0] - 0.92387953251128674) < 1e-15);
  CHECK(t3.alphas[0] == doctest::Approx(M_PI / 8));
}

TEST_CASE("build_table rejects m = 0") {
  CHECK_THROWS_AS(build_table<double>(0), std::invalid_argument);
  CHECK_THROWS_AS(build_table<Real128>(-3), std::invalid_argument);
}

TEST_CASE("one_minus_c and one_plus_c match 1 -+ c") {
  for (int m : {1, 2, 7, 50}) {
    const auto t = build_table<double>(m);
    for (int k = 0; k <= m; ++k) {
      CHECK(std::fabs(t.one_minus_c[k] - (1 - t.c[k])) <= 4e-16);
      CHECK(std::fabs(t.one_plus_c[k] - (1 + t.c[k])) <= 4e-16);
    }
  }
}

TEST_CASE("eigenvalue examples") {
  CHECK(eigenvalue(build_table<double>(1), 0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  const double s = std::sin(M_PI / 8);
  CHECK(eigenvalue(build_table<double>(3), 0, 0) == doctest::Approx(1 - 4.0 / 3 * s * s).epsilon(1e-15));
  CHECK(eigenvalue(build_table<double>(3), 0, 0) == doctest::Approx(0.8047379).epsilon(1e-7));
  // j + k = m: not an eigenvalue, but the formula value is still returned.
  CHECK(eigenvalue(build_table<double>(2), 0, 2) == doctest::Approx(-2.5).epsilon(1e-15));
  CHECK_FALSE(is_certified_eigenvalue(2, 0, 2));
  CHECK(is_certified_eigenvalue(2, 0, 0));
}

TEST_CASE("eigenvalue index checks") {
  const auto t = build_table<double>(4);
  CHECK_THROWS_AS(eigenvalue(t, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalue(t, 0, 5), std::invalid_argument);
}

TEST_CASE("table invariants over a sweep") {
  for (int m = 1; m <= 1000; m += (m < 40 ? 1 : 37)) {
    const auto t = build_table<double>(m);
    REQUIRE(t.size() == m + 1);
    double sum = 0;
    for (int k = 0; k <= m; ++k) {
      CHECK(t.c[m - k] == -t.c[k]);
      CHECK(t.s[m - k] == t.s[k]);
      CHECK(t.s[k] > 0);
      if (k > 0) {
        CHECK(t.c[k] < t.c[k - 1]);
      }
      sum += t.c[k];
    }
    CHECK(std::fabs(sum) <= m * std::ldexp(1.0, -53 + 4));
  }
}

TEST_CASE("wider tiers agree with narrower ones") {
  for (int m : {3, 17, 64}) {
    const auto t53 = build_table<double>(m);
    const auto t128 = build_table<Real128>(m);
    const auto t256 = build_table<Real256>(m);
    CHECK(t128.precision == 128);
    CHECK(t256.precision == 256);
    for (int k = 0; k <= m; ++k) {
      CHECK(std::fabs(t53.c[k] - t128.c[k].convert_to<double>()) <= 1.2e-16);
      const Real128 diff = abs(Real128(t256.c[k]) - t128.c[k]);
      CHECK(diff <= Real128(std::ldexp(1.0, -127)));
    }
  }
}

TEST_CASE("eigenvalue containment") {
  for (int m = 3; m <= 40; ++m) {
    const auto t = build_table<double>(m);
    for (int j = 0; j <= m; ++j) {
      for (int k = 0; k <= m; ++k) {
        const double x = eigenvalue(t, j, k);
        if (is_certified_eigenvalue(m, j, k)) {
          CHECK(std::fabs(x) < 1);
        }
        if (m >= 8) {
          CHECK(x > 0);
          CHECK(x < 1);
        }
      }
    }
  }
}

TEST_CASE("eigenvalue symmetry is exact") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = gen.range(1, 300);
    const int j = gen.range(0, m);
    const int k = gen.range(0, m);
    const auto t = build_table<double>(m);
    const double x = eigenvalue(t, j, k);
    CHECK(x == eigenvalue(t, k, j));
    CHECK(x == eigenvalue(t, m - j, m - k));
  }
}

TEST_CASE("identity values by hand") {
  const auto r1 = verify_identities(build_table<double>(1), 1e-12);
  CHECK(r1.identities.size() == 7);
  CHECK(r1.identities[0].computed == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(r1.identities[3].computed == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(r1.all_pass());

  const auto r2 = verify_identities(build_table<double>(2), 1e-12);
  CHECK(r2.identities[0].computed == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(r2.all_pass());

  CHECK_THROWS_AS(verify_identities(build_table<double>(2), 0.0), std::invalid_argument);
}

TEST_CASE("identities hold within (m+1)^3 2^(6-p) where rounding allows") {
  // Beyond these ranges the dominant term, of size ~(m+1)^4, carries more
  // input rounding than the tolerance; the full sweep lives in the
  // acceptance suite.
  for (int m = 1; m <= 10; ++m) {
    const auto r = verify_identities(build_table<double>(m), identity_tolerance(m, 53));
    CHECK_MESSAGE(r.all_pass(), "m=" << m);
  }
  for (int m = 1; m <= 14; ++m) {
    const auto r = verify_identities(build_table<Real128>(m), identity_tolerance(m, 128));
    CHECK_MESSAGE(r.all_pass(), "m=" << m);
  }
  for (int m = 1; m <= 14; ++m) {
    const auto r = verify_identities(build_table<Real256>(m), identity_tolerance(m, 256));
    CHECK_MESSAGE(r.all_pass(), "m=" << m);
  }
}

TEST_CASE("a wrong table fails the identities") {
  auto t = build_table<double>(6);
  t.c[0] *= 1 + 1e-9;
  CHECK_FALSE(verify_identities(t, identity_tolerance(6, 53)).all_pass());
}

TEST_CASE("spectral certification for m = 2, 3") {
  for (int m : {2, 3}) {
    const auto certs = certify_spectrum(m, 1e-8);
    int certified = 0;
    for (int j = 0; j <= m; ++j) {
      for (int k = 0; k <= m; ++k) {
        certified += is_certified_eigenvalue(m, j, k);
      }
    }
    CHECK(static_cast<int>(certs.size()) == certified);
    for (const auto& c : certs) {
      CHECK(c.j + c.k != m);
      CHECK(c.pass);
      CHECK(c.determinant < 1e-8);
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "invwalk/chain_dp.hpp"
#include "invwalk/formulas.hpp"
#include "invwalk/simd/kernels.hpp"
#include "oracles.hpp"

using namespace invwalk;
using namespace invwalk::simd;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("isa selection") {
  CHECK((isa_name(Isa::kScalar) == "scalar"));
  CHECK((isa_name(Isa::kAvx2) == "avx2"));
  ::setenv("INVWALK_SIMD", "scalar", 1);
  CHECK(active_isa() == Isa::kScalar);
  ::unsetenv("INVWALK_SIMD");
  CHECK(active_isa() == detected_isa());
}

TEST_CASE("grid layout") {
  const DpGrid g(4);
  CHECK(g.stride == 6);
  CHECK(g.degree[g.index(0, 0)] == 1);  // only (0,1)
  CHECK(g.degree[g.index(1, 2)] == 4);
  CHECK(g.degree[g.index(0, 3)] == 2);
  CHECK(g.diagonal[g.index(2, 2)] == 1);
  CHECK(g.diagonal[g.index(1, 2)] == 0);
  CHECK(g.degree[g.index(2, 1)] == 0);  // below the triangle
}

TEST_CASE("dp_step: vector path is bit-identical to the scalar reference") {
  if (detected_isa() != Isa::kAvx2) {
    MESSAGE("AVX2 not available; comparing the scalar path with itself");
  }
  oracle::Gen gen(2024);
  for (int m = 1; m <= 40; ++m) {
    const DpGrid g(m);
    std::vector<double> in(g.cells(), 0.0);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        in[g.index(i, j)] = gen.uniform(0, 1);
      }
    }
    std::vector<double> ref(g.cells(), 0.0);
    std::vector<double> vec(g.cells(), 0.0);
    for (int step = 0; step < 5; ++step) {
      scalar::dp_step(g, in.data(), ref.data());
      dp_step(detected_isa(), g, in.data(), vec.data());
      REQUIRE_MESSAGE(same_bits(ref, vec), "m=" << m << " step=" << step);
      in = ref;
    }
  }
}

TEST_CASE("pow_batch: vector path is bit-identical to the scalar reference") {
  oracle::Gen gen(7);
  for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
    std::vector<double> x(len);
    for (auto& v : x) {
      v = gen.uniform(-1, 1);
    }
    for (std::uint64_t n : {0ULL, 1ULL, 2ULL, 7ULL, 1000ULL, 123456789ULL, 1ULL << 62}) {
      std::vector<double> ref(len), vec(len);
      scalar::pow_batch(x, n, ref);
      pow_batch(detected_isa(), x, n, vec);
      CHECK_MESSAGE(same_bits(ref, vec), "len=" << len << " n=" << n);
    }
  }
}

TEST_CASE("pow_batch matches repeated squaring semantics") {
  const std::vector<double> x{0.5, -0.5, 0.9, -1.0, 1.0, 0.0};
  std::vector<double> out(x.size());
  pow_batch(active_isa(), x, 3, out);
  CHECK(out[0] == 0.125);
  CHECK(out[1] == -0.125);
  CHECK(out[2] == doctest::Approx(0.729).epsilon(1e-15));
  CHECK(out[3] == -1.0);
  CHECK(out[4] == 1.0);
  CHECK(out[5] == 0.0);
  pow_batch(active_isa(), x, 0, out);
  for (double v : out) {
    CHECK(v == 1.0);
  }
}

TEST_CASE("float dp and closed form are the same under either isa") {
  ::setenv("INVWALK_SIMD", "scalar", 1);
  const double dp_scalar = expected_inversions_dp_float(37, 500);
  const double cf_scalar = closed_form(61, 77777).value;
  ::unsetenv("INVWALK_SIMD");
  CHECK(expected_inversions_dp_float(37, 500) == dp_scalar);
  CHECK(closed_form(61, 77777).value == cf_scalar);
}

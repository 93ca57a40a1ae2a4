#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Float inner loops with a scalar reference implementation and vectorized
// variants chosen at runtime. Every variant performs the same IEEE operations
// in the same order per element, so results are bit-identical to the scalar
// reference (the build disables FMA contraction).
namespace invwalk::simd {

enum class Isa { kScalar, kAvx2 };

/// Best variant the CPU supports.
Isa detected_isa();

/// detected_isa(), unless INVWALK_SIMD=scalar forces the reference path.
Isa active_isa();

std::string_view isa_name(Isa isa);

/// Padded square layout for the triangular DP on 0 <= i <= j < m. Cell (i, j)
/// lives at (i + 1) * stride + (j + 1); the border and the strict lower
/// triangle stay zero, so neighbour sums need no bounds checks.
struct DpGrid {
  explicit DpGrid(int m);

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i + 1) * stride + static_cast<std::size_t>(j + 1);
  }
  std::size_t cells() const { return static_cast<std::size_t>(stride) * stride; }

  int m;
  int stride;
  std::vector<double> degree;    // neighbours inside the triangle
  std::vector<double> diagonal;  // 1 on i == j, else 0
};

/// One step of the inversion-probability recursion in double precision:
/// out = in + (sum_nbr in - deg * in)/m + diag * (1 - 2 in)/m on triangle
/// cells. `out` cells outside the triangle are left untouched.
void dp_step(Isa isa, const DpGrid& grid, const double* in, double* out);

/// out[i] = x[i]^n by binary powering (square-and-multiply from the low bit).
void pow_batch(Isa isa, std::span<const double> x, std::uint64_t n, std::span<double> out);

namespace scalar {
void dp_step(const DpGrid& grid, const double* in, double* out);
void pow_batch(std::span<const double> x, std::uint64_t n, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void dp_step(const DpGrid& grid, const double* in, double* out);
void pow_batch(std::span<const double> x, std::uint64_t n, std::span<double> out);
}  // namespace avx2

}  // namespace invwalk::simd

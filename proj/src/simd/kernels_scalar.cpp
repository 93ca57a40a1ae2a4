#include "invwalk/simd/kernels.hpp"

namespace invwalk::simd {

DpGrid::DpGrid(int m_) : m(m_), stride(m_ + 2) {
  degree.assign(cells(), 0.0);
  diagonal.assign(cells(), 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      int deg = 0;
      deg += (i > 0) ? 1 : 0;          // (i-1, j)
      deg += (i + 1 <= j) ? 1 : 0;     // (i+1, j)
      deg += (j - 1 >= i) ? 1 : 0;     // (i, j-1)
      deg += (j + 1 < m) ? 1 : 0;      // (i, j+1)
      degree[index(i, j)] = deg;
      diagonal[index(i, j)] = (i == j) ? 1.0 : 0.0;
    }
  }
}

namespace scalar {

void dp_step(const DpGrid& grid, const double* in, double* out) {
  const double m = grid.m;
  const std::size_t stride = grid.stride;
  const double* deg = grid.degree.data();
  const double* diag = grid.diagonal.data();
  for (int i = 0; i < grid.m; ++i) {
    for (int j = i; j < grid.m; ++j) {
      const std::size_t c = grid.index(i, j);
      const double p = in[c];
      const double s = ((in[c - stride] + in[c + stride]) + in[c - 1]) + in[c + 1];
      const double t1 = (s - deg[c] * p) / m;
      const double t2 = diag[c] * (1.0 - 2.0 * p) / m;
      out[c] = (p + t1) + t2;
    }
  }
}

void pow_batch(std::span<const double> x, std::uint64_t n, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double result = 1.0;
    double base = x[i];
    for (std::uint64_t e = n; e != 0; e >>= 1) {
      if (e & 1U) {
        result *= base;
      }
      base *= base;
    }
    out[i] = result;
  }
}

}  // namespace scalar
}  // namespace invwalk::simd

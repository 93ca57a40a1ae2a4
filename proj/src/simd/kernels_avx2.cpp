// Built with -mavx2 only; callers reach it through dispatch after a CPU check.
#include "invwalk/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace invwalk::simd::avx2 {

void dp_step(const DpGrid& grid, const double* in, double* out) {
  const double m = grid.m;
  const std::size_t stride = grid.stride;
  const double* deg = grid.degree.data();
  const double* diag = grid.diagonal.data();
  const __m256d vm = _mm256_set1_pd(m);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);

  for (int i = 0; i < grid.m; ++i) {
    int j = i;
    for (; j + 4 <= grid.m; j += 4) {
      const std::size_t c = grid.index(i, j);
      const __m256d p = _mm256_loadu_pd(in + c);
      const __m256d up = _mm256_loadu_pd(in + c - stride);
      const __m256d down = _mm256_loadu_pd(in + c + stride);
      const __m256d left = _mm256_loadu_pd(in + c - 1);
      const __m256d right = _mm256_loadu_pd(in + c + 1);
      const __m256d s = _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(up, down), left), right);
      const __m256d t1 = _mm256_div_pd(_mm256_sub_pd(s, _mm256_mul_pd(_mm256_loadu_pd(deg + c), p)), vm);
      const __m256d t2 =
          _mm256_div_pd(_mm256_mul_pd(_mm256_loadu_pd(diag + c), _mm256_sub_pd(one, _mm256_mul_pd(two, p))), vm);
      _mm256_storeu_pd(out + c, _mm256_add_pd(_mm256_add_pd(p, t1), t2));
    }
    for (; j < grid.m; ++j) {
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
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    __m256d result = _mm256_set1_pd(1.0);
    __m256d base = _mm256_loadu_pd(x.data() + i);
    for (std::uint64_t e = n; e != 0; e >>= 1) {
      if (e & 1U) {
        result = _mm256_mul_pd(result, base);
      }
      base = _mm256_mul_pd(base, base);
    }
    _mm256_storeu_pd(out.data() + i, result);
  }
  if (i < x.size()) {
    scalar::pow_batch(x.subspan(i), n, out.subspan(i));
  }
}

}  // namespace invwalk::simd::avx2

#else

namespace invwalk::simd::avx2 {

void dp_step(const DpGrid& grid, const double* in, double* out) { scalar::dp_step(grid, in, out); }

void pow_batch(std::span<const double> x, std::uint64_t n, std::span<double> out) {
  scalar::pow_batch(x, n, out);
}

}  // namespace invwalk::simd::avx2

#endif

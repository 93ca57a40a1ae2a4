#include <cstdlib>
#include <string>

#include "invwalk/simd/kernels.hpp"

namespace invwalk::simd {

Isa detected_isa() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has_avx2 = __builtin_cpu_supports("avx2");
  if (has_avx2) {
    return Isa::kAvx2;
  }
#endif
  return Isa::kScalar;
}

Isa active_isa() {
  if (const char* env = std::getenv("INVWALK_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::kScalar;
  }
  return detected_isa();
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      return "avx2";
    case Isa::kScalar:
      break;
  }
  return "scalar";
}

void dp_step(Isa isa, const DpGrid& grid, const double* in, double* out) {
  if (isa == Isa::kAvx2 && detected_isa() == Isa::kAvx2) {
    avx2::dp_step(grid, in, out);
  } else {
    scalar::dp_step(grid, in, out);
  }
}

void pow_batch(Isa isa, std::span<const double> x, std::uint64_t n, std::span<double> out) {
  if (isa == Isa::kAvx2 && detected_isa() == Isa::kAvx2) {
    avx2::pow_batch(x, n, out);
  } else {
    scalar::pow_batch(x, n, out);
  }
}

}  // namespace invwalk::simd

#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "invwalk/trig_core.hpp"

namespace invwalk {

/// Which of the three equivalent spectral sums to evaluate:
///   kTheorem1: m(m+1)/4 - 1/(8(m+1)^2) sum (c_j+c_k)^2/(s_j^2 s_k^2) x_jk^n
///   kSer2:     m(m+1)/4 - 1/(8(m+1)^2) sum (c_j+c_k)/((1-c_j)(1-c_k)) x_jk^n
///   kSer3:     1/(8(m+1)^2) sum (c_j+c_k)/((1-c_j)(1-c_k)) (1 - x_jk^n)
enum class ClosedFormVariant { kTheorem1, kSer2, kSer3 };

struct ClosedFormOptions {
  ClosedFormVariant variant = ClosedFormVariant::kTheorem1;
  int precision = 53;
  /// Materialize all (m+1)^2 powers at once (when at most 2^24 entries)
  /// instead of row by row. Does not change the result.
  bool materialize_x = true;
  /// Sum only one of each mirror pair (j,k), (m-j,m-k). kTheorem1 weights
  /// only; the result is bit-identical to the full double loop.
  bool exploit_symmetry = true;
};

template <class Real>
struct ClosedFormValue {
  Real value;
  bool saturated = false;  // x_00^n underflowed; value is exactly m(m+1)/4
};

struct ClosedFormResult {
  double value = 0;
  std::string decimal;  // full working precision
  int precision = 0;
  bool saturated = false;
};

/// Spectral evaluation of I_{m,n} in O(m^2 log n). Terms are accumulated
/// exactly (ExactSum), so summation order never affects the result.
template <class Real>
ClosedFormValue<Real> closed_form_value(const SpectralTable<Real>& table, std::uint64_t n,
                                        const ClosedFormOptions& opts);

ClosedFormResult closed_form(int m, std::uint64_t n, const ClosedFormOptions& opts = {});

ClosedFormVariant parse_variant(const std::string& name);
std::string variant_name(ClosedFormVariant v);

/// Eriksen's binomial formula for I_{m,n}, evaluated exactly.
mpq_class eriksen(int m, std::uint64_t n);

/// The integers g_{s,m} and h_{s,m} of Eriksen's formula.
mpz_class eriksen_g(int s, int m);
mpz_class eriksen_h(int s, int m);

struct BoundsPair {
  double lower = 0;
  double upper = 0;
};

/// Two-sided bounds on I_{m,n} from the dominant eigenvalue x_00:
///   m(m+1)/4 (1 - x_00^n) <= I_{m,n} <= m(m+1)/4 - c_0^2/(2(m+1)^2 s_0^4) x_00^n.
/// Requires m >= 3 (std::domain_error otherwise).
BoundsPair bounds(int m, std::uint64_t n);

/// Checks lower <= value <= upper without rounding trouble near the limit:
/// compares the exact gap m(m+1)/4 - value against x_00^n times the two gap
/// coefficients at 256-bit precision.
bool sandwich_holds(int m, std::uint64_t n, const mpq_class& value);

/// Expected inversions of the lazy chain that moves with probability p:
/// sum_k C(n,k) p^k (1-p)^(n-k) I_{m,k}, exact.
mpq_class aperiodic_expected(int m, std::uint64_t n, const mpq_class& p);

/// Default laziness m/(m+1).
mpq_class default_lazy_p(int m);

}  // namespace invwalk

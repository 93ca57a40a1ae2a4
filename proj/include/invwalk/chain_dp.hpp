#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace invwalk {

/// Exact inversion probabilities p_{i,j}^{(n)} = P(pi_i > pi_{j+1}) after n
/// steps, on the triangle 0 <= i <= j < m.
///
/// Stored with the fixed denominator m^n: numerators()[idx] = p * m^n. Each
/// step multiplies the denominator by m, so the recursion runs in integers.
class InversionState {
 public:
  /// The all-zero state at n = 0 (the identity permutation).
  explicit InversionState(int m);

  /// A state with explicit numerators over m^n, in row-major triangle order.
  InversionState(int m, std::uint64_t n, std::vector<mpz_class> numerators);

  /// Hand-built state from rationals; throws std::invalid_argument when a
  /// denominator does not divide m^n.
  static InversionState from_rationals(int m, std::uint64_t n, const std::vector<mpq_class>& values);

  int m() const { return m_; }
  std::uint64_t n() const { return n_; }
  std::size_t cells() const { return numerators_.size(); }
  const std::vector<mpz_class>& numerators() const { return numerators_; }
  const mpz_class& denominator() const { return denominator_; }

  /// Row-major position of (i, j), 0 <= i <= j < m.
  std::size_t index(int i, int j) const;

  mpq_class probability(int i, int j) const;

  /// Sum of all cells: the expected inversion number at step n.
  mpq_class expected_inversions() const;

 private:
  int m_;
  std::uint64_t n_;
  mpz_class denominator_;
  std::vector<mpz_class> numerators_;
};

/// One step of the recursion: each cell moves toward its triangle neighbours
/// at rate 1/m and diagonal cells gain (1 - 2p)/m.
InversionState dp_step(const InversionState& state);

/// True iff p_{i,j} = p_{m-j-1, m-i-1} for every cell.
bool symmetry_check(const InversionState& state);

/// Exact I_{m,n}. O(n m^2) big-integer work, checked against the work budget.
mpq_class expected_inversions_dp(int m, std::uint64_t n);

/// I_{m,0}, ..., I_{m,n} from a single DP run.
std::vector<mpq_class> expected_inversions_dp_sequence(int m, std::uint64_t n);

/// Approximate I_{m,n} from the same recursion in double precision, using
/// the SIMD stencil kernel. Not exact.
double expected_inversions_dp_float(int m, std::uint64_t n);

/// Coefficients of u^a v^b, 0 <= a, b < dim, in a dense grid.
struct BivariatePoly {
  explicit BivariatePoly(int dim_ = 0) : dim(dim_), coeff(static_cast<std::size_t>(dim_) * dim_) {}

  mpq_class& at(int a, int b) { return coeff[static_cast<std::size_t>(a) * dim + b]; }
  const mpq_class& at(int a, int b) const { return coeff[static_cast<std::size_t>(a) * dim + b]; }

  int dim;
  std::vector<mpq_class> coeff;
};

/// P(u, v) = sum_n t^n sum p_{i,j}^{(n)} u^i v^j truncated after t^N.
struct TruncatedBivariateSeries {
  int m = 0;
  int order = 0;                      // N
  std::vector<BivariatePoly> by_power;  // by_power[r] = [t^r] P(u, v), dim m

  /// Border marginals: [t^r] P_l(v), P_t(u), P_d(u) as coefficient vectors.
  std::vector<mpq_class> left(int r) const;
  std::vector<mpq_class> top(int r) const;
  std::vector<mpq_class> diagonal(int r) const;
};

TruncatedBivariateSeries build_series(int m, int order);

/// Largest |coefficient| of u v (LHS - RHS) of the functional equation for
/// P(u, v), modulo t^{N+1}. Zero when the DP and the equation agree.
mpq_class functional_equation_residual(int m, int order);

}  // namespace invwalk

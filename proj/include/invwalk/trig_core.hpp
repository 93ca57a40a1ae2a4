#pragma once

#include <string>
#include <vector>

#include "invwalk/common.hpp"

namespace invwalk {

/// Angles alpha_k = (2k+1)pi/(2m+2) and their cosines and sines, k = 0..m.
///
/// Values in the upper half are mirrored from the lower half
/// (c[m-k] = -c[k], s[m-k] = s[k]) so that the reflection symmetry of every
/// spectral quantity holds bit for bit. `one_minus_c` and `one_plus_c` hold
/// 1 - c_k and 1 + c_k evaluated as 2 sin^2(alpha_k/2) and 2 cos^2(alpha_k/2),
/// which avoids cancellation for the smallest angles.
///
/// Immutable after construction; safe to share between threads.
template <class Real>
struct SpectralTable {
  int m = 0;
  int precision = 0;
  std::vector<Real> alphas;
  std::vector<Real> c;
  std::vector<Real> s;
  std::vector<Real> one_minus_c;
  std::vector<Real> one_plus_c;

  int size() const { return m + 1; }
};

/// Builds the table for S_{m+1}. Throws std::invalid_argument for m < 1.
template <class Real>
SpectralTable<Real> build_table(int m);

/// x_{jk} = 1 - (4/m)(1 - c_j c_k). Defined for every pair; only pairs with
/// j + k != m are eigenvalues of the transition matrix (see
/// is_certified_eigenvalue). Throws std::invalid_argument when j or k is
/// outside [0, m].
template <class Real>
Real eigenvalue(const SpectralTable<Real>& table, int j, int k);

/// True when x_{jk} is a certified eigenvalue, i.e. j + k != m.
bool is_certified_eigenvalue(int m, int j, int k);

struct IdentityResult {
  std::string name;
  double computed = 0;
  double expected = 0;
  double residual = 0;
  bool pass = false;
};

struct IdentityReport {
  int m = 0;
  int precision = 0;
  double tolerance = 0;
  std::vector<IdentityResult> identities;

  bool all_pass() const;
};

/// Evaluates the seven closed-form trigonometric sums of the spectral
/// constants against their exact values. Sums are accumulated exactly
/// (ExactSum) so the residual reflects only term rounding.
template <class Real>
IdentityReport verify_identities(const SpectralTable<Real>& table, double tol);

/// The tolerance (m+1)^3 * 2^(6 - precision) used by the identity sweeps.
double identity_tolerance(int m, int precision);

struct SpectralCertificate {
  int m = 0;
  int j = 0;
  int k = 0;
  double eigenvalue = 0;
  double determinant = 0;  // |det(P - x I)|
  bool pass = false;
};

/// Builds the full (m+1)! x (m+1)! transition matrix of the adjacent
/// transposition chain and evaluates det(P - x_{jk} I) for every certified
/// pair by partially pivoted elimination at 256-bit precision. Intended for
/// m <= 4 (the matrix is dense).
std::vector<SpectralCertificate> certify_spectrum(int m, double tol);

}  // namespace invwalk

#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "invwalk/trig_core.hpp"

namespace invwalk {

/// Dense univariate polynomial with rational coefficients, ascending degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);
  static Polynomial constant(const mpq_class& c);
  static Polynomial monomial(const mpq_class& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(int k) const;
  mpq_class leading() const;
  mpq_class operator()(const mpq_class& t) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const mpq_class& c) const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  /// Quotient and remainder over Q; throws std::domain_error on division by zero.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);

  /// Monic-free gcd: a primitive integer polynomial with positive leading
  /// coefficient (1 when the inputs are coprime).
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  /// Ascending "c*t^k" terms joined by " + " / " - ".
  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// numerator / denominator in reduced form: gcd 1, denominator with integer
/// coefficients, content 1 and a positive constant term.
class RationalFunction {
 public:
  RationalFunction(const Polynomial& num, const Polynomial& den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// "num / den", each side parenthesized when it has more than one term.
  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Largest state dimension m(m+1)/2 accepted by build_gf.
inline constexpr int kGfDimensionLimit = 120;

/// I_m(t) = sum_n I_{m,n} t^n, solved exactly from the DP's linear system by
/// fraction-free elimination over Z[t]. Throws BudgetExceeded when
/// m(m+1)/2 > kGfDimensionLimit.
RationalFunction build_gf(int m);

/// Taylor coefficients [t^0 .. t^N] from the denominator recurrence.
std::vector<mpq_class> series(const RationalFunction& rf, int order);

/// 1/(1 - t(1-p)) * rf(t p / (1 - t(1-p))): the GF of the chain that moves
/// with probability p.
RationalFunction aperiodic_gf(const RationalFunction& rf, int m, const mpq_class& p);

struct PoleMatch {
  double x = 0;           // candidate eigenvalue (1 for the stationary pole)
  int multiplicity = 0;   // times it divided the reversed denominator
};

struct PoleReport {
  int degree = 0;         // denominator degree
  int matched = 0;        // degree accounted for by candidates
  std::vector<PoleMatch> matches;
  bool pass = false;      // matched == degree
};

/// Checks that every root of the denominator is 1 or 1/x_{jk} for a
/// certified pair. The reversed denominator (whose roots are the x values)
/// is deflated by each candidate while the Newton step |R/R'| at the
/// candidate is below `tol`, at 128-bit precision.
PoleReport pole_check(const RationalFunction& rf, const SpectralTable<Real128>& table, double tol = 1e-8);

}  // namespace invwalk

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace invwalk {

enum class FMethod { kSeries, kQuadrature };

/// Linear-regime law f(kappa) = sum_j (-1)^j (2j)! (2 kappa)^j / (j! (j+1)!^2)
///                            = 1/(2 pi kappa) int_0^inf (1 - e^{-8 kappa t^2/(1+t^2)}) / (t^2 (1+t^2)) dt.
/// The series is summed in MPFR with enough guard bits to absorb its
/// alternating peak (about e^{8 kappa}); the quadrature is adaptive
/// Gauss-Kronrod on (0, T) with T set by the 1/t^4 tail bound. f(0) = 1.
/// Throws std::domain_error for kappa < 0.
double f_kappa(double kappa, FMethod method = FMethod::kSeries, double tol = 1e-12);

/// Cubic-regime law g(kappa) = 1/4 - (16/pi^4) (sum_j e^{-kappa pi^2 (2j+1)^2/2} / (2j+1)^2)^2,
/// truncated by a geometric tail bound. Throws std::domain_error for kappa <= 0.
double g_kappa(double kappa, double tol = 1e-15);

/// m(m+1)/4 - (16 m / pi^4) e^{-alpha pi^2}. Requires m >= 3.
double critical_estimate(int m, double alpha);

enum class Regime { kSublinear, kLinear, kIntermediate, kCriticalLog, kCubic, kSupercubic };

std::string regime_name(Regime r);

/// Regime boundaries. The asymptotic laws only separate the regimes up to
/// constants; these factor-of-ten buffers are engineering choices.
struct RegimeThresholds {
  double sublinear_below = 0.1;          // n < 0.1 m
  double linear_up_to = 10.0;            // n <= 10 m
  double intermediate_divisor = 10.0;    // n < m^3 / (10 max(1, log m))
  double critical_halfwidth = 5.0;       // |n - m^3 log m / pi^2| <= 5 m^3
  double cubic_from = 0.1;               // 0.1 m^3 <= n
  double cubic_up_to = 10.0;             // n <= 10 m^3
};

struct RegimeEstimate {
  Regime regime = Regime::kSupercubic;
  double predicted = 0;    // after clamping into the bounds
  double raw = 0;          // before clamping
  std::string normalizer;  // scale the law is stated in: "n", "sqrt(m n)", "m^2", "m(m+1)/4"
  std::optional<double> kappa;  // n/m, n/m^3 or alpha
  bool clamped = false;
  double lower = 0;
  double upper = 0;
};

/// Classifies (m, n) and evaluates the matching law, clamped into the
/// dominant-eigenvalue bounds. Checked in this order: sublinear, linear,
/// intermediate, critical window, cubic, supercubic. Requires m >= 3.
RegimeEstimate predict(int m, std::uint64_t n, const RegimeThresholds& thresholds = {});

struct ConsistencyPoint {
  double kappa = 0;
  double value = 0;      // sqrt(kappa) f(kappa) or g(kappa)/sqrt(kappa)
  double deviation = 0;  // |value - sqrt(2/pi)| / sqrt(2/pi)
};

struct ConsistencyReport {
  double limit = 0;  // sqrt(2/pi)
  std::vector<ConsistencyPoint> f_side;  // kappa = 10, 50, 100
  std::vector<ConsistencyPoint> g_side;  // kappa = 1e-2, 1e-3, 1e-4
  bool f_monotone = false;
  bool g_monotone = false;
  bool f_within_band = false;  // last point within `band`
  bool g_within_band = false;
  bool pass = false;
};

/// Both sides of sqrt(kappa) f(kappa) -> sqrt(2/pi) <- g(kappa)/sqrt(kappa).
/// `tol` is the evaluation tolerance, `band` the relative deviation allowed
/// at the most extreme kappa.
ConsistencyReport consistency_limits(double tol = 1e-12, double band = 0.02);

}  // namespace invwalk

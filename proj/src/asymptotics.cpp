#include "invwalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <mpfr.h>

#include "invwalk/formulas.hpp"

namespace invwalk {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

double f_series(double kappa, double tol) {
  // Terms peak near j = 8 kappa at magnitude about e^{8 kappa}.
  const auto bits = static_cast<mpfr_prec_t>(std::ceil(11.6 * kappa + std::log2(1.0 / tol) + 64));
  Mpfr sum(bits);
  Mpfr term(bits);
  Mpfr k4(bits);
  mpfr_set_ui(sum.get(), 1, MPFR_RNDN);
  mpfr_set_ui(term.get(), 1, MPFR_RNDN);
  mpfr_set_d(k4.get(), kappa, MPFR_RNDN);
  mpfr_mul_ui(k4.get(), k4.get(), 4, MPFR_RNDN);
  // a_j / a_{j-1} = -4 kappa (2j - 1) / (j + 1)^2
  for (unsigned long j = 1;; ++j) {
    mpfr_mul(term.get(), term.get(), k4.get(), MPFR_RNDN);
    mpfr_mul_ui(term.get(), term.get(), 2 * j - 1, MPFR_RNDN);
    mpfr_div_ui(term.get(), term.get(), (j + 1) * (j + 1), MPFR_RNDN);
    mpfr_neg(term.get(), term.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    const double next_ratio = 4.0 * kappa * static_cast<double>(2 * j + 1) / static_cast<double>((j + 2) * (j + 2));
    if (next_ratio < 1.0 && std::fabs(mpfr_get_d(term.get(), MPFR_RNDN)) < tol / 4) {
      break;
    }
  }
  return mpfr_get_d(sum.get(), MPFR_RNDN);
}

double f_quadrature(double kappa, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  const double norm = 1.0 / (2.0 * kPi * kappa);
  auto integrand = [kappa](double t) {
    if (t == 0) {
      return 8.0 * kappa;
    }
    const double t2 = t * t;
    return -std::expm1(-8.0 * kappa * t2 / (1.0 + t2)) / (t2 * (1.0 + t2));
  };
  // Integrand <= 1/t^4, so the tail beyond T is at most 1/(3 T^3).
  const double limit = std::cbrt(2.0 * norm / (3.0 * tol));
  double total = gauss_kronrod<double, 61>::integrate(integrand, 0.0, std::min(1.0, limit), 15, 1e-15);
  for (double a = 1.0; a < limit; a *= 8.0) {
    total += gauss_kronrod<double, 61>::integrate(integrand, a, std::min(8.0 * a, limit), 15, 1e-15);
  }
  return norm * total;
}

}  // namespace

double f_kappa(double kappa, FMethod method, double tol) {
  if (!(kappa >= 0) || !std::isfinite(kappa)) {
    throw std::domain_error("f requires kappa >= 0");
  }
  if (!(tol > 0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (kappa == 0) {
    return 1.0;
  }
  return method == FMethod::kSeries ? f_series(kappa, tol) : f_quadrature(kappa, tol);
}

double g_kappa(double kappa, double tol) {
  if (!(kappa > 0) || !std::isfinite(kappa)) {
    throw std::domain_error("g requires kappa > 0");
  }
  if (!(tol > 0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  const double pi2 = kPi * kPi;
  auto term = [&](double j) {
    const double odd = 2 * j + 1;
    return std::exp(-kappa * pi2 * odd * odd / 2) / (odd * odd);
  };
  // Consecutive terms beyond J shrink by at least e^{-4 kappa pi^2 (J+2)}, so
  // the tail is below term(J+1) / (1 - that ratio). An error e in the sum
  // moves g by at most (32/pi^4) S e < e.
  double sum = 0;
  for (double j = 0;; ++j) {
    sum += term(j);
    const double ratio = std::exp(-4 * kappa * pi2 * (j + 2));
    if (term(j + 1) / (1 - ratio) < tol / 4) {
      break;
    }
  }
  return 0.25 - 16.0 / (pi2 * pi2) * sum * sum;
}

double critical_estimate(int m, double alpha) {
  if (m < 3) {
    throw std::domain_error("critical estimate requires m >= 3");
  }
  const double pi2 = kPi * kPi;
  return m * (m + 1.0) / 4.0 - 16.0 * m / (pi2 * pi2) * std::exp(-alpha * pi2);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::kSublinear:
      return "sublinear";
    case Regime::kLinear:
      return "linear";
    case Regime::kIntermediate:
      return "intermediate";
    case Regime::kCriticalLog:
      return "critical_log";
    case Regime::kCubic:
      return "cubic";
    case Regime::kSupercubic:
      break;
  }
  return "supercubic";
}

RegimeEstimate predict(int m, std::uint64_t n, const RegimeThresholds& th) {
  if (m < 3) {
    throw std::domain_error("predict requires m >= 3, got " + std::to_string(m));
  }
  const double md = m;
  const double nd = static_cast<double>(n);
  const double m3 = md * md * md;
  const double logm = std::log(md);
  const double critical_n = m3 * logm / (kPi * kPi);

  RegimeEstimate est;
  if (nd < th.sublinear_below * md) {
    est.regime = Regime::kSublinear;
    est.raw = nd;
    est.normalizer = "n";
    est.kappa = nd / md;
  } else if (nd <= th.linear_up_to * md) {
    est.regime = Regime::kLinear;
    est.kappa = nd / md;
    est.raw = nd * f_kappa(*est.kappa);
    est.normalizer = "n";
  } else if (nd < m3 / (th.intermediate_divisor * std::max(1.0, logm))) {
    est.regime = Regime::kIntermediate;
    est.raw = std::sqrt(2.0 * md * nd / kPi);
    est.normalizer = "sqrt(m n)";
  } else if (std::fabs(nd - critical_n) <= th.critical_halfwidth * m3) {
    est.regime = Regime::kCriticalLog;
    est.kappa = (nd - critical_n) / m3;
    est.raw = critical_estimate(m, *est.kappa);
    est.normalizer = "m(m+1)/4";
  } else if (nd >= th.cubic_from * m3 && nd <= th.cubic_up_to * m3) {
    est.regime = Regime::kCubic;
    est.kappa = nd / m3;
    est.raw = md * md * g_kappa(*est.kappa);
    est.normalizer = "m^2";
  } else {
    est.regime = Regime::kSupercubic;
    est.raw = md * (md + 1) / 4;
    est.normalizer = "m(m+1)/4";
  }

  const BoundsPair b = bounds(m, n);
  est.lower = b.lower;
  est.upper = b.upper;
  est.predicted = std::clamp(est.raw, b.lower, b.upper);
  est.clamped = est.predicted != est.raw;
  return est;
}

ConsistencyReport consistency_limits(double tol, double band) {
  ConsistencyReport report;
  report.limit = std::sqrt(2.0 / kPi);
  for (double kappa : {10.0, 50.0, 100.0}) {
    const double v = std::sqrt(kappa) * f_kappa(kappa, FMethod::kQuadrature, tol);
    report.f_side.push_back({kappa, v, std::fabs(v - report.limit) / report.limit});
  }
  for (double kappa : {1e-2, 1e-3, 1e-4}) {
    const double v = g_kappa(kappa, tol) / std::sqrt(kappa);
    report.g_side.push_back({kappa, v, std::fabs(v - report.limit) / report.limit});
  }
  auto monotone = [](const std::vector<ConsistencyPoint>& pts) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!(pts[i].deviation < pts[i - 1].deviation)) {
        return false;
      }
    }
    return true;
  };
  report.f_monotone = monotone(report.f_side);
  report.g_monotone = monotone(report.g_side);
  report.f_within_band = report.f_side.back().deviation <= band;
  report.g_within_band = report.g_side.back().deviation <= band;
  report.pass = report.f_monotone && report.g_monotone && report.f_within_band && report.g_within_band;
  return report;
}

}  // namespace invwalk

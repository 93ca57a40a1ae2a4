#include "invwalk/formulas.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "invwalk/chain_dp.hpp"
#include "invwalk/exact_sum.hpp"
#include "invwalk/simd/kernels.hpp"
#include "invwalk/spectral_terms.hpp"

namespace invwalk {

namespace {

constexpr std::size_t kMaterializeLimit = std::size_t{1} << 24;

template <class Real>
Real power(Real base, std::uint64_t n) {
  Real result = 1;
  for (std::uint64_t e = n; e != 0; e >>= 1) {
    if (e & 1U) {
      result *= base;
    }
    base *= base;
  }
  return result;
}

template <class Real>
void powers(std::span<const Real> x, std::uint64_t n, std::span<Real> out) {
  if constexpr (std::is_same_v<Real, double>) {
    simd::pow_batch(simd::active_isa(), x, n, out);
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i] = power(x[i], n);
    }
  }
}

// Pairs are visited row by row; `flush` folds a batch of (weight, x) into the
// accumulator. With the mirror trick only the canonical half is visited and
// its weights are doubled (an exact operation).
template <class Real>
struct TermBatch {
  std::vector<Real> weights;
  std::vector<Real> xs;
  std::vector<Real> pows;

  void flush(std::uint64_t n, ClosedFormVariant variant, ExactSum<Real>& acc) {
    pows.resize(xs.size());
    powers<Real>(xs, n, pows);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (variant == ClosedFormVariant::kSer3) {
        acc += weights[i] * (Real(1) - pows[i]);
      } else {
        acc += weights[i] * pows[i];
      }
    }
    weights.clear();
    xs.clear();
  }
};

}  // namespace

template <class Real>
ClosedFormValue<Real> closed_form_value(const SpectralTable<Real>& t, std::uint64_t n,
                                        const ClosedFormOptions& opts) {
  const int m = t.m;
  const Real limit = Real(m) * Real(m + 1) / 4;
  const Real scale = Real(8) * Real(m + 1) * Real(m + 1);

  if (m >= 3 && power(detail::x_jk(t, 0, 0), n) == 0) {
    return {limit, true};
  }

  const bool theorem1 = opts.variant == ClosedFormVariant::kTheorem1;
  const bool halve = theorem1 && opts.exploit_symmetry;
  const std::size_t pairs = static_cast<std::size_t>(m + 1) * (m + 1);
  const bool materialize = opts.materialize_x && pairs <= kMaterializeLimit;

  std::vector<Real> s2(m + 1);
  for (int k = 0; k <= m; ++k) {
    s2[k] = t.s[k] * t.s[k];
  }

  ExactSum<Real> acc;
  TermBatch<Real> batch;
  for (int j = 0; j <= m; ++j) {
    for (int k = 0; k <= m; ++k) {
      if (j + k == m) {
        continue;  // c_j + c_k == 0 exactly
      }
      Real factor = 1;
      if (halve) {
        const int mj = m - j;
        const int mk = m - k;
        if (j > mj || (j == mj && k > mk)) {
          continue;
        }
        if (j != mj || k != mk) {
          factor = 2;
        }
      }
      const Real sum = t.c[j] + t.c[k];
      Real weight = theorem1 ? sum * sum / (s2[j] * s2[k]) : sum / (t.one_minus_c[j] * t.one_minus_c[k]);
      batch.weights.push_back(factor * weight);
      batch.xs.push_back(detail::x_jk(t, j, k));
    }
    if (!materialize) {
      batch.flush(n, opts.variant, acc);
    }
  }
  batch.flush(n, opts.variant, acc);

  const Real total = acc.value();
  if (opts.variant == ClosedFormVariant::kSer3) {
    return {total / scale, false};
  }
  return {limit - total / scale, false};
}

ClosedFormResult closed_form(int m, std::uint64_t n, const ClosedFormOptions& opts) {
  check_budget(static_cast<long double>(m + 1) * (m + 1), "closed_form(m=" + std::to_string(m) + ")");
  return with_precision(opts.precision, [&]<class Real>(std::type_identity<Real>) {
    const auto table = build_table<Real>(m);
    const auto v = closed_form_value<Real>(table, n, opts);
    ClosedFormResult r;
    r.value = to_double(v.value);
    r.decimal = to_decimal(v.value);
    r.precision = mantissa_bits<Real>();
    r.saturated = v.saturated;
    return r;
  });
}

ClosedFormVariant parse_variant(const std::string& name) {
  if (name == "theorem1") {
    return ClosedFormVariant::kTheorem1;
  }
  if (name == "ser2") {
    return ClosedFormVariant::kSer2;
  }
  if (name == "ser3") {
    return ClosedFormVariant::kSer3;
  }
  throw std::invalid_argument("unknown closed-form variant '" + name + "' (theorem1|ser2|ser3)");
}

std::string variant_name(ClosedFormVariant v) {
  switch (v) {
    case ClosedFormVariant::kSer2:
      return "ser2";
    case ClosedFormVariant::kSer3:
      return "ser3";
    case ClosedFormVariant::kTheorem1:
      break;
  }
  return "theorem1";
}

namespace {

mpz_class binomial(long top, long bottom) {
  if (top < 0 || bottom < 0 || bottom > top) {
    return 0;
  }
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
  return out;
}

}  // namespace

mpz_class eriksen_g(int s, int m) {
  const long half = (s + 1) / 2;  // ceil(s/2)
  const long top = 2 * half - 1;
  mpz_class g = 0;
  for (long l = 0; l <= m; ++l) {
    for (long k = 0;; ++k) {
      const long bottom = half + l + k * (m + 1);
      if (bottom > top) {
        break;
      }
      const mpz_class term = binomial(top, bottom) * (m - 2 * l);
      g += (k % 2 == 0) ? term : mpz_class(-term);
    }
  }
  return g;
}

mpz_class eriksen_h(int s, int m) {
  const long half = s / 2;  // floor(s/2)
  const long top = 2 * half;
  const long reach = half / (m + 1);
  mpz_class h = 0;
  for (long j = -reach; j <= reach; ++j) {
    const mpz_class term = binomial(top, half + j * (m + 1));
    h += (j % 2 == 0) ? term : mpz_class(-term);
  }
  return h;
}

mpq_class eriksen(int m, std::uint64_t n) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  const long double nn = static_cast<long double>(n);
  check_budget(nn * nn * (nn / m + m), "eriksen(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  if (n == 0) {
    return 0;
  }
  std::vector<mpz_class> gh(n + 1);
  for (std::uint64_t s = 1; s <= n; ++s) {
    gh[s] = eriksen_g(static_cast<int>(s), m) * eriksen_h(static_cast<int>(s), m);
  }
  // I * m^n = sum_r m^(n-r) C(n,r) sum_s C(r-1,s-1) (-4)^(r-s) g_s h_s
  mpz_class total = 0;
  mpz_class mpow = 1;  // m^(n-r), built from r = n downwards
  for (std::uint64_t r = n; r >= 1; --r) {
    mpz_class inner = 0;
    mpz_class four = 1;  // (-4)^(r-s), s from r downwards
    for (std::uint64_t s = r; s >= 1; --s) {
      inner += binomial(static_cast<long>(r - 1), static_cast<long>(s - 1)) * four * gh[s];
      four *= -4;
    }
    total += mpow * binomial(static_cast<long>(n), static_cast<long>(r)) * inner;
    mpow *= m;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(n));
  mpq_class out(total, den);
  out.canonicalize();
  return out;
}

namespace {

template <class Real>
struct GapData {
  Real limit;       // m(m+1)/4
  Real upper_coef;  // c_0^2 / (2 (m+1)^2 s_0^4)
  Real log_x00;     // log(x_00)
};

template <class Real>
GapData<Real> gap_data(int m) {
  using std::cos;
  using std::log;
  using std::sin;
  const Real alpha0 = boost::math::constants::pi<Real>() / Real(2 * m + 2);
  const Real s0 = sin(alpha0);
  const Real c0 = cos(alpha0);
  GapData<Real> g;
  g.limit = Real(m) * Real(m + 1) / 4;
  g.upper_coef = c0 * c0 / (Real(2) * Real(m + 1) * Real(m + 1) * s0 * s0 * s0 * s0);
  // x_00 = 1 - (4/m) s_0^2
  if constexpr (std::is_same_v<Real, double>) {
    g.log_x00 = std::log1p(-4.0 * s0 * s0 / m);
  } else {
    g.log_x00 = log(Real(1) - Real(4) * s0 * s0 / Real(m));
  }
  return g;
}

void require_bounds_domain(int m) {
  if (m < 3) {
    throw std::domain_error("bounds require m >= 3, got " + std::to_string(m));
  }
}

}  // namespace

BoundsPair bounds(int m, std::uint64_t n) {
  require_bounds_domain(m);
  const auto g = gap_data<double>(m);
  const double exponent = static_cast<double>(n) * g.log_x00;
  const double x00n = std::exp(exponent);
  BoundsPair b;
  b.lower = g.limit * -std::expm1(exponent);
  b.upper = g.limit - g.upper_coef * x00n;
  return b;
}

bool sandwich_holds(int m, std::uint64_t n, const mpq_class& value) {
  require_bounds_domain(m);
  const auto g = gap_data<Real256>(m);
  const mpq_class gap = mpq_class(m * (m + 1), 4) - value;
  if (n == 0) {
    const Real256 exact_gap = real_from_rational<Real256>(gap);
    return exact_gap >= g.upper_coef && gap <= mpq_class(m * (m + 1), 4);
  }
  if (gap <= 0) {
    return false;
  }
  // gap / x00^n must lie in [upper_coef, limit]
  const Real256 ratio = exp(log(real_from_rational<Real256>(gap)) - Real256(n) * g.log_x00);
  return ratio >= g.upper_coef && ratio <= g.limit;
}

mpq_class default_lazy_p(int m) { return mpq_class(m, m + 1); }

mpq_class aperiodic_expected(int m, std::uint64_t n, const mpq_class& p) {
  if (p <= 0 || p > 1) {
    throw std::invalid_argument("move probability must lie in (0, 1]");
  }
  const auto seq = expected_inversions_dp_sequence(m, n);
  const mpq_class q = 1 - p;
  mpq_class total = 0;
  mpq_class pk = 1;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (seq[k] != 0) {
      mpq_class qpow;
      mpz_class num;
      mpz_class den;
      mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(n - k));
      mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(n - k));
      qpow = mpq_class(num, den);
      mpz_class choose;
      mpz_bin_uiui(choose.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
      total += mpq_class(choose) * pk * qpow * seq[k];
    }
    pk *= p;
  }
  total.canonicalize();
  return total;
}

template ClosedFormValue<double> closed_form_value<double>(const SpectralTable<double>&, std::uint64_t,
                                                           const ClosedFormOptions&);
template ClosedFormValue<Real128> closed_form_value<Real128>(const SpectralTable<Real128>&, std::uint64_t,
                                                             const ClosedFormOptions&);
template ClosedFormValue<Real256> closed_form_value<Real256>(const SpectralTable<Real256>&, std::uint64_t,
                                                             const ClosedFormOptions&);

}  // namespace invwalk

#include "invwalk/trig_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/math/constants/constants.hpp>

#include "invwalk/exact_sum.hpp"
#include "invwalk/spectral_terms.hpp"

namespace invwalk {

namespace {

// Table entries are evaluated at twice the working precision and rounded
// once, so they are correctly rounded in all but pathological cases.
using Real512 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<512, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

template <class Real>
struct Wider;
template <>
struct Wider<double> {
  using type = Real128;
};
template <>
struct Wider<Real128> {
  using type = Real256;
};
template <>
struct Wider<Real256> {
  using type = Real512;
};

template <class Real, class Wide>
Real narrow(const Wide& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x.template convert_to<double>();
  } else {
    return static_cast<Real>(x);
  }
}

}  // namespace

template <class Real>
SpectralTable<Real> build_table(int m) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1, got " + std::to_string(m));
  }
  using Wide = typename Wider<Real>::type;
  using std::cos;
  using std::sin;
  const Wide pi = boost::math::constants::pi<Wide>();
  SpectralTable<Real> t;
  t.m = m;
  t.precision = mantissa_bits<Real>();
  const int n = m + 1;
  t.alphas.resize(n);
  t.c.resize(n);
  t.s.resize(n);
  t.one_minus_c.resize(n);
  t.one_plus_c.resize(n);
  for (int k = 0; k < n; ++k) {
    const Wide alpha = Wide(2 * k + 1) * pi / Wide(2 * m + 2);
    t.alphas[k] = narrow<Real>(alpha);
    if (2 * k < m) {
      t.c[k] = narrow<Real>(cos(alpha));
      t.s[k] = narrow<Real>(sin(alpha));
    } else if (2 * k == m) {
      t.c[k] = 0;
      t.s[k] = 1;
    } else {
      t.c[k] = -t.c[m - k];
      t.s[k] = t.s[m - k];
    }
    const Wide half = sin(alpha / 2);
    t.one_minus_c[k] = narrow<Real>(2 * half * half);
  }
  for (int k = 0; k < n; ++k) {
    t.one_plus_c[k] = t.one_minus_c[m - k];
  }
  return t;
}

template <class Real>
Real eigenvalue(const SpectralTable<Real>& table, int j, int k) {
  if (j < 0 || j > table.m || k < 0 || k > table.m) {
    throw std::invalid_argument("eigenvalue index out of range");
  }
  return detail::x_jk(table, j, k);
}

bool is_certified_eigenvalue(int m, int j, int k) { return j + k != m; }

bool IdentityReport::all_pass() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.pass; });
}

double identity_tolerance(int m, int precision) {
  return std::ldexp(std::pow(static_cast<double>(m + 1), 3), 6 - precision);
}

template <class Real>
IdentityReport verify_identities(const SpectralTable<Real>& table, double tol) {
  if (!(tol > 0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  const int m = table.m;
  const int n = m + 1;
  const auto& c = table.c;
  const auto& s = table.s;
  const auto& om = table.one_minus_c;

  ExactSum<Real> basic, basic_c, sumcs, cs_id, mixed, iddouble2, iddouble;
  for (int j = 0; j < n; ++j) {
    basic += Real(1) / om[j];
    basic_c += c[j] / om[j];
  }
  for (int k = 0; k <= (m - 1) / 2; ++k) {
    sumcs += c[k] * c[k] / (s[k] * s[k]);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Real sum = c[j] + c[k];
      const Real omcc = detail::one_minus_cc(table, j, k);
      const Real denom = om[j] * om[k];
      cs_id += sum * sum / (s[j] * s[j] * s[k] * s[k]);
      mixed += sum * omcc / denom;
      iddouble2 += omcc * omcc / denom;
      iddouble += sum / denom;
    }
  }

  const mpz_class mm = m;
  const mpz_class m1 = m + 1;
  const std::vector<std::pair<std::string, std::pair<const ExactSum<Real>*, mpq_class>>> rows = {
      {"sum 1/(1-c_j) = (m+1)^2", {&basic, mpq_class(m1 * m1)}},
      {"sum c_j/(1-c_j) = m(m+1)", {&basic_c, mpq_class(mm * m1)}},
      {"sum_{k<=(m-1)/2} c_k^2/s_k^2 = m(m+1)/2", {&sumcs, mpq_class(mm * m1, 2)}},
      {"sum (c_j+c_k)^2/(s_j^2 s_k^2) = 2m(m+1)^3", {&cs_id, mpq_class(2 * mm * m1 * m1 * m1)}},
      {"sum (c_j+c_k)(1-c_jc_k)/((1-c_j)(1-c_k)) = 2m(m+1)^2", {&mixed, mpq_class(2 * mm * m1 * m1)}},
      {"sum (1-c_jc_k)^2/((1-c_j)(1-c_k)) = (2m+1)(m+1)^2", {&iddouble2, mpq_class((2 * mm + 1) * m1 * m1)}},
      {"sum (c_j+c_k)/((1-c_j)(1-c_k)) = 2m(m+1)^3", {&iddouble, mpq_class(2 * mm * m1 * m1 * m1)}},
  };

  IdentityReport report;
  report.m = m;
  report.precision = table.precision;
  report.tolerance = tol;
  for (const auto& [name, values] : rows) {
    using std::abs;
    // The expected values are integers or half-integers below 2^53, so they
    // are exact in every tier and the residual carries no final rounding.
    const Real expected = real_from_rational<Real>(values.second);
    ExactSum<Real> diff = *values.first;
    diff += -expected;
    const Real residual = abs(diff.value());
    IdentityResult r;
    r.name = name;
    r.computed = to_double(values.first->value());
    r.expected = to_double(expected);
    r.residual = to_double(residual);
    r.pass = residual < Real(tol);
    report.identities.push_back(r);
  }
  return report;
}

namespace {

// det(M) by Gaussian elimination with partial pivoting.
Real256 determinant(std::vector<std::vector<Real256>> a) {
  const std::size_t n = a.size();
  Real256 det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > abs(a[pivot][col])) {
        pivot = r;
      }
    }
    if (a[pivot][col] == 0) {
      return 0;
    }
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real256 factor = a[r][col] / a[col][col];
      if (factor == 0) {
        continue;
      }
      for (std::size_t k = col; k < n; ++k) {
        a[r][k] -= factor * a[col][k];
      }
    }
  }
  return det;
}

}  // namespace

std::vector<SpectralCertificate> certify_spectrum(int m, double tol) {
  if (m < 1 || m > 5) {
    throw std::invalid_argument("spectral certification supports 1 <= m <= 5");
  }
  std::vector<int> perm(m + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::vector<int>> states;
  do {
    index.emplace(perm, states.size());
    states.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const std::size_t dim = states.size();
  std::vector<std::vector<Real256>> transition(dim, std::vector<Real256>(dim, Real256(0)));
  const Real256 step = Real256(1) / m;
  for (std::size_t a = 0; a < dim; ++a) {
    for (int i = 0; i < m; ++i) {
      auto next = states[a];
      std::swap(next[i], next[i + 1]);
      transition[a][index.at(next)] += step;
    }
  }

  const auto table = build_table<Real256>(m);
  std::vector<SpectralCertificate> out;
  for (int j = 0; j <= m; ++j) {
    for (int k = 0; k <= m; ++k) {
      if (!is_certified_eigenvalue(m, j, k)) {
        continue;
      }
      const Real256 x = eigenvalue(table, j, k);
      auto shifted = transition;
      for (std::size_t d = 0; d < dim; ++d) {
        shifted[d][d] -= x;
      }
      SpectralCertificate cert;
      cert.m = m;
      cert.j = j;
      cert.k = k;
      cert.eigenvalue = to_double(x);
      cert.determinant = to_double(Real256(abs(determinant(std::move(shifted)))));
      cert.pass = cert.determinant < tol;
      out.push_back(cert);
    }
  }
  return out;
}

template SpectralTable<double> build_table<double>(int);
template SpectralTable<Real128> build_table<Real128>(int);
template SpectralTable<Real256> build_table<Real256>(int);
template double eigenvalue<double>(const SpectralTable<double>&, int, int);
template Real128 eigenvalue<Real128>(const SpectralTable<Real128>&, int, int);
template Real256 eigenvalue<Real256>(const SpectralTable<Real256>&, int, int);
template IdentityReport verify_identities<double>(const SpectralTable<double>&, double);
template IdentityReport verify_identities<Real128>(const SpectralTable<Real128>&, double);
template IdentityReport verify_identities<Real256>(const SpectralTable<Real256>&, double);

}  // namespace invwalk

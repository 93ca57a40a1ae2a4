#include "invwalk/chain_dp.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "invwalk/common.hpp"
#include "invwalk/exact_sum.hpp"
#include "invwalk/simd/kernels.hpp"

namespace invwalk {

namespace {

std::size_t triangle_cells(int m) { return static_cast<std::size_t>(m) * (m + 1) / 2; }

mpz_class power_of(int m, std::uint64_t n) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(n));
  return out;
}

void require_m(int m) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1, got " + std::to_string(m));
  }
}

}  // namespace

InversionState::InversionState(int m) : InversionState(m, 0, std::vector<mpz_class>(triangle_cells(m < 1 ? 1 : m))) {}

InversionState::InversionState(int m, std::uint64_t n, std::vector<mpz_class> numerators)
    : m_(m), n_(n), numerators_(std::move(numerators)) {
  require_m(m);
  if (numerators_.size() != triangle_cells(m)) {
    throw std::invalid_argument("state must hold m(m+1)/2 cells");
  }
  denominator_ = power_of(m, n);
}

InversionState InversionState::from_rationals(int m, std::uint64_t n, const std::vector<mpq_class>& values) {
  require_m(m);
  const mpz_class den = power_of(m, n);
  std::vector<mpz_class> nums;
  nums.reserve(values.size());
  for (const auto& v : values) {
    const mpq_class scaled = v * den;
    if (scaled.get_den() != 1) {
      throw std::invalid_argument("probability " + v.get_str() + " is not a multiple of 1/m^n");
    }
    nums.push_back(scaled.get_num());
  }
  return InversionState(m, n, std::move(nums));
}

std::size_t InversionState::index(int i, int j) const {
  if (i < 0 || i > j || j >= m_) {
    throw std::out_of_range("cell outside the triangle 0 <= i <= j < m");
  }
  const auto row = static_cast<std::size_t>(i);
  return row * m_ - row * (row - 1) / 2 + static_cast<std::size_t>(j - i);
}

mpq_class InversionState::probability(int i, int j) const {
  mpq_class q(numerators_[index(i, j)], denominator_);
  q.canonicalize();
  return q;
}

mpq_class InversionState::expected_inversions() const {
  mpz_class total = 0;
  for (const auto& v : numerators_) {
    total += v;
  }
  mpq_class q(total, denominator_);
  q.canonicalize();
  return q;
}

InversionState dp_step(const InversionState& state) {
  const int m = state.m();
  const auto& in = state.numerators();
  std::vector<mpz_class> out(in.size());
  const mpz_class& den = state.denominator();
  mpz_class acc;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const mpz_class& p = in[state.index(i, j)];
      acc = p * m;
      if (i > 0) {
        acc += in[state.index(i - 1, j)] - p;
      }
      if (i + 1 <= j) {
        acc += in[state.index(i + 1, j)] - p;
      }
      if (j - 1 >= i) {
        acc += in[state.index(i, j - 1)] - p;
      }
      if (j + 1 < m) {
        acc += in[state.index(i, j + 1)] - p;
      }
      if (i == j) {
        acc += den - 2 * p;
      }
      out[state.index(i, j)] = acc;
    }
  }
  return InversionState(m, state.n() + 1, std::move(out));
}

bool symmetry_check(const InversionState& state) {
  const int m = state.m();
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      if (state.numerators()[state.index(i, j)] != state.numerators()[state.index(m - j - 1, m - i - 1)]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<mpq_class> expected_inversions_dp_sequence(int m, std::uint64_t n) {
  require_m(m);
  check_budget(static_cast<long double>(n) * m * m, "dp(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  std::vector<mpq_class> out;
  out.reserve(n + 1);
  InversionState state(m);
  out.push_back(state.expected_inversions());
  for (std::uint64_t step = 0; step < n; ++step) {
    state = dp_step(state);
    out.push_back(state.expected_inversions());
  }
  return out;
}

mpq_class expected_inversions_dp(int m, std::uint64_t n) {
  require_m(m);
  check_budget(static_cast<long double>(n) * m * m, "dp(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  InversionState state(m);
  for (std::uint64_t step = 0; step < n; ++step) {
    state = dp_step(state);
  }
  return state.expected_inversions();
}

double expected_inversions_dp_float(int m, std::uint64_t n) {
  require_m(m);
  check_budget(static_cast<long double>(n) * m * m,
               "dp_float(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  const simd::DpGrid grid(m);
  const simd::Isa isa = simd::active_isa();
  std::vector<double> a(grid.cells(), 0.0);
  std::vector<double> b(grid.cells(), 0.0);
  for (std::uint64_t step = 0; step < n; ++step) {
    simd::dp_step(isa, grid, a.data(), b.data());
    std::swap(a, b);
  }
  ExactSum<double> total;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      total += a[grid.index(i, j)];
    }
  }
  return total.value();
}

std::vector<mpq_class> TruncatedBivariateSeries::left(int r) const {
  std::vector<mpq_class> out(m);
  for (int j = 0; j < m; ++j) {
    out[j] = by_power[r].at(0, j);
  }
  return out;
}

std::vector<mpq_class> TruncatedBivariateSeries::top(int r) const {
  std::vector<mpq_class> out(m);
  for (int i = 0; i < m; ++i) {
    out[i] = by_power[r].at(i, m - 1);
  }
  return out;
}

std::vector<mpq_class> TruncatedBivariateSeries::diagonal(int r) const {
  std::vector<mpq_class> out(m);
  for (int i = 0; i < m; ++i) {
    out[i] = by_power[r].at(i, i);
  }
  return out;
}

TruncatedBivariateSeries build_series(int m, int order) {
  require_m(m);
  if (order < 0) {
    throw std::invalid_argument("truncation order must be >= 0");
  }
  check_budget(static_cast<long double>(order + 1) * m * m, "series(m=" + std::to_string(m) + ")");
  TruncatedBivariateSeries series;
  series.m = m;
  series.order = order;
  InversionState state(m);
  for (int r = 0; r <= order; ++r) {
    BivariatePoly poly(m);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        poly.at(i, j) = state.probability(i, j);
      }
    }
    series.by_power.push_back(std::move(poly));
    if (r < order) {
      state = dp_step(state);
    }
  }
  return series;
}

mpq_class functional_equation_residual(int m, int order) {
  require_m(m);
  if (order < 1) {
    throw std::invalid_argument("truncation order must be >= 1");
  }
  const TruncatedBivariateSeries series = build_series(m, order);
  const int dim = m + 2;
  const mpq_class inv_m(1, m);
  mpq_class worst = 0;

  for (int r = 0; r <= order; ++r) {
    // diff = u v (LHS - RHS) at t^r.
    BivariatePoly diff(dim);
    const BivariatePoly& cur = series.by_power[r];
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        diff.at(i + 1, j + 1) += cur.at(i, j);
      }
    }
    if (r >= 1) {
      const BivariatePoly& prev = series.by_power[r - 1];
      for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
          const mpq_class& p = prev.at(i, j);
          if (p == 0) {
            continue;
          }
          diff.at(i + 1, j + 1) -= p;
          const mpq_class q = p * inv_m;
          diff.at(i + 1, j + 1) += 4 * q;
          diff.at(i + 2, j + 1) -= q;
          diff.at(i, j + 1) -= q;
          diff.at(i + 1, j + 2) -= q;
          diff.at(i + 1, j) -= q;
        }
      }
      // RHS = (1/m) [ uv sum_{i<m} (uv)^i - (1-u) v P_l(v) - (v-1) u v^m P_t(u) - (u^2 v + u) P_d(uv) ]
      for (int i = 0; i < m; ++i) {
        diff.at(i + 1, i + 1) -= inv_m;
      }
      const auto left = series.left(r - 1);
      const auto top = series.top(r - 1);
      const auto diag = series.diagonal(r - 1);
      for (int k = 0; k < m; ++k) {
        const mpq_class l = left[k] * inv_m;
        diff.at(0, k + 1) += l;
        diff.at(1, k + 1) -= l;
        const mpq_class tp = top[k] * inv_m;
        diff.at(k + 1, m + 1) += tp;
        diff.at(k + 1, m) -= tp;
        const mpq_class d = diag[k] * inv_m;
        diff.at(k + 2, k + 1) += d;
        diff.at(k + 1, k) += d;
      }
    }
    for (const auto& value : diff.coeff) {
      const mpq_class magnitude = abs(value);
      if (magnitude > worst) {
        worst = magnitude;
      }
    }
  }
  return worst;
}

}  // namespace invwalk

#pragma once

#include "invwalk/trig_core.hpp"

namespace invwalk::detail {

// 1 - c_j c_k without cancellation. When c_j c_k > 0 it is rewritten as
// (1 - a) + a (1 - b) with a >= b the two absolute cosines, taken from the
// lower half of the table. The canonical ordering makes the result invariant
// under j <-> k and (j, k) -> (m - j, m - k).
template <class Real>
Real one_minus_cc(const SpectralTable<Real>& t, int j, int k) {
  const Real prod = t.c[j] * t.c[k];
  if (!(prod > 0)) {
    return Real(1) - prod;
  }
  int a = t.c[j] > 0 ? j : t.m - j;
  int b = t.c[k] > 0 ? k : t.m - k;
  if (a > b) {
    std::swap(a, b);
  }
  return t.one_minus_c[a] + t.c[a] * t.one_minus_c[b];
}

template <class Real>
Real x_jk(const SpectralTable<Real>& t, int j, int k) {
  return Real(1) - Real(4) * one_minus_cc(t, j, k) / Real(t.m);
}

}  // namespace invwalk::detail

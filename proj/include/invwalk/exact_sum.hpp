#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

namespace invwalk {

/// Round-to-nearest-even a + b. Native floats are used as is. cpp_bin_float
/// (Boost 1.74) misrounds when the smaller operand sits exactly p + 1 binades
/// below the larger one, so that case is resolved here by hand.
template <class Real>
Real rn_add(const Real& a, const Real& b) {
  if constexpr (std::is_floating_point_v<Real>) {
    return a + b;
  } else {
    using std::abs;
    if (a == 0 || b == 0) {
      return a + b;
    }
    const bool a_larger = abs(a) >= abs(b);
    const Real& x = a_larger ? a : b;
    const Real& y = a_larger ? b : a;
    constexpr int p = std::numeric_limits<Real>::digits;
    int ex = 0;
    int ey = 0;
    const Real fx = frexp(x, &ex);
    frexp(y, &ey);
    if (ex - ey <= p) {
      return x + y;
    }
    // |y| < ulp(x) / 2. Only a power of two moving toward zero can change.
    const bool toward_zero = (x > 0) != (y > 0);
    if (abs(fx) != Real(0.5) || !toward_zero || ex - ey > p + 1) {
      return x;
    }
    // x = +-2^(ex-1); the neighbour below is h = 2^(ex-1-p) away.
    const Real half_h = ldexp(Real(1), ex - 2 - p);
    if (abs(y) > half_h) {
      return x * (Real(1) - ldexp(Real(1), -p));
    }
    return x;
  }
}

// Shewchuk-style exact summation: keeps a list of non-overlapping partials
// built with TwoSum, so the rounded total is independent of the order in
// which terms arrive. Requires round-to-nearest binary addition (rn_add).
template <class Real>
class ExactSum {
 public:
  void add(Real x) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < partials_.size(); ++i) {
      Real y = partials_[i];
      if (abs_of(x) < abs_of(y)) {
        std::swap(x, y);
      }
      const Real hi = rn_add(x, y);
      const Real lo = y - (hi - x);
      if (lo != 0) {
        partials_[kept++] = lo;
      }
      x = hi;
    }
    partials_.resize(kept);
    partials_.push_back(x);
  }

  ExactSum& operator+=(const Real& x) {
    add(x);
    return *this;
  }

  /// Correctly rounded value of the exact sum (up to the final halfway case).
  Real value() const {
    if (partials_.empty()) {
      return Real(0);
    }
    std::size_t n = partials_.size();
    Real hi = partials_[--n];
    Real lo = 0;
    while (n > 0) {
      const Real x = hi;
      const Real y = partials_[--n];
      hi = rn_add(x, y);
      const Real yr = hi - x;
      lo = y - yr;
      if (lo != 0) {
        break;
      }
    }
    // Round-half-even correction when the remaining partials tip the balance.
    if (n > 0 && ((lo < 0 && partials_[n - 1] < 0) || (lo > 0 && partials_[n - 1] > 0))) {
      const Real y = lo * 2;
      const Real x = rn_add(hi, y);
      const Real yr = x - hi;
      if (y == yr) {
        hi = x;
      }
    }
    return hi;
  }

 private:
  static Real abs_of(const Real& v) {
    using std::abs;
    return abs(v);
  }

  std::vector<Real> partials_;
};

}  // namespace invwalk

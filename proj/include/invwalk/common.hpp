#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

namespace invwalk {

// Binary floats with exactly 128 and 256 mantissa bits. Expression templates
// are disabled so that every operation rounds once, like double.
using Real128 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;
using Real256 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Raised when a request would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Work budget in elementary cell updates. Reads INVWALK_BUDGET once per call;
/// falls back to 1e9.
std::uint64_t work_budget();

/// Throws BudgetExceeded when `work` exceeds work_budget(). `what` names the
/// request in the error text.
void check_budget(long double work, const std::string& what);

template <class Real>
constexpr int mantissa_bits() {
  if constexpr (std::is_same_v<Real, double>) {
    return 53;
  } else {
    return std::numeric_limits<Real>::digits;
  }
}

/// Maps a requested precision in bits onto the supported tiers 53, 128, 256.
/// Anything in between is rounded up; below 53 or above 256 is rejected.
int effective_precision(int bits);

/// Calls `fn(std::type_identity<Real>{})` with the float type for `bits`.
template <class Fn>
decltype(auto) with_precision(int bits, Fn&& fn) {
  switch (effective_precision(bits)) {
    case 53:
      return fn(std::type_identity<double>{});
    case 128:
      return fn(std::type_identity<Real128>{});
    default:
      return fn(std::type_identity<Real256>{});
  }
}

template <class Real>
Real real_from_rational(const mpq_class& q) {
  if constexpr (std::is_same_v<Real, double>) {
    return q.get_d();
  } else {
    return Real(mpz_class(q.get_num()).get_str()) / Real(mpz_class(q.get_den()).get_str());
  }
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

/// Decimal rendering with enough digits to round-trip the type.
template <class Real>
std::string to_decimal(const Real& x);

/// "num/den" with "/1" dropped for integers.
std::string rational_string(const mpq_class& q);

/// Parses "a", "a/b", or a finite decimal such as "0.25" or "-1.5e-3" exactly.
mpq_class parse_rational(const std::string& text);

}  // namespace invwalk

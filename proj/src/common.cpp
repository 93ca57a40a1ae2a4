#include "invwalk/common.hpp"

#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>

namespace invwalk {

std::uint64_t work_budget() {
  constexpr std::uint64_t kDefault = 1'000'000'000ULL;
  const char* env = std::getenv("INVWALK_BUDGET");
  if (env == nullptr || *env == '\0') {
    return kDefault;
  }
  char* end = nullptr;
  const long double value = std::strtold(env, &end);
  if (end == env || *end != '\0' || !(value > 0)) {
    throw std::invalid_argument("INVWALK_BUDGET must be a positive number");
  }
  if (value >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(value);
}

void check_budget(long double work, const std::string& what) {
  const std::uint64_t budget = work_budget();
  if (work > static_cast<long double>(budget)) {
    std::ostringstream os;
    os << what << " needs ~" << std::setprecision(3) << work << " cell-updates, budget is " << budget;
    throw BudgetExceeded(os.str());
  }
}

int effective_precision(int bits) {
  if (bits < 53) {
    throw std::invalid_argument("precision must be at least 53 bits, got " + std::to_string(bits));
  }
  if (bits == 53) {
    return 53;
  }
  if (bits <= 128) {
    return 128;
  }
  if (bits <= 256) {
    return 256;
  }
  throw std::invalid_argument("precision above 256 bits is not supported, got " + std::to_string(bits));
}

template <class Real>
std::string to_decimal(const Real& x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<Real>::max_digits10) << x;
  return os.str();
}

template std::string to_decimal<double>(const double&);
template std::string to_decimal<Real128>(const Real128&);
template std::string to_decimal<Real256>(const Real256&);

std::string rational_string(const mpq_class& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_str();
}

mpq_class parse_rational(const std::string& text) {
  auto fail = [&]() -> mpq_class {
    throw std::invalid_argument("not an exact number: '" + text + "'");
  };
  if (text.empty()) {
    return fail();
  }
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    mpz_class num;
    mpz_class den;
    if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0 ||
        den == 0) {
      return fail();
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) {
        --exponent;
      }
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) {
    return fail();
  }
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') {
      return fail();
    }
    const std::string tail = text.substr(pos + 1);
    if (tail.empty()) {
      return fail();
    }
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(tail, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != tail.size() || e > 100000 || e < -100000) {
      return fail();
    }
    exponent += e;
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace invwalk

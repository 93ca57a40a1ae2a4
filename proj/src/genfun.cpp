#include "invwalk/genfun.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "invwalk/common.hpp"

namespace invwalk {

// ---------------------------------------------------------------------------
// Polynomial over Q

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) {
    c.canonicalize();
  }
  trim();
}

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const mpq_class& c, int degree) {
  std::vector<mpq_class> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) {
    coeffs_.pop_back();
  }
}

mpq_class Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) {
    return 0;
  }
  return coeffs_[k];
}

mpq_class Polynomial::leading() const { return is_zero() ? mpq_class(0) : coeffs_.back(); }

mpq_class Polynomial::operator()(const mpq_class& t) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<mpq_class> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * mpq_class(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) {
    return {};
  }
  std::vector<mpq_class> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      v[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const mpq_class& c) const {
  std::vector<mpq_class> v(coeffs_);
  for (auto& x : v) {
    x *= c;
  }
  return Polynomial(std::move(v));
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
  if (b.is_zero()) {
    throw std::domain_error("polynomial division by zero");
  }
  std::vector<mpq_class> rem(a.coeffs_);
  const int db = b.degree();
  const int dq = a.degree() - db;
  std::vector<mpq_class> quot(dq >= 0 ? dq + 1 : 0);
  const mpq_class lead = b.leading();
  for (int k = dq; k >= 0; --k) {
    const mpq_class c = rem[k + db] / lead;
    quot[k] = c;
    if (c == 0) {
      continue;
    }
    for (int i = 0; i <= db; ++i) {
      rem[k + i] -= c * b.coeffs_[i];
    }
  }
  q = Polynomial(std::move(quot));
  r = Polynomial(std::move(rem));
}

namespace {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) {
    p.pop_back();
  }
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  ZPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  ztrim(out);
  return out;
}

ZPoly zadd(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) {
    a.resize(b.size());
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i] += b[i];
  }
  ztrim(a);
  return a;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) {
    a.resize(b.size());
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i] -= b[i];
  }
  ztrim(a);
  return a;
}

// a / b where the quotient is known to lie in Z[t].
ZPoly zdivexact(ZPoly a, const ZPoly& b) {
  if (b.empty()) {
    throw std::logic_error("exact division by the zero polynomial");
  }
  if (a.empty()) {
    return {};
  }
  const std::size_t db = b.size() - 1;
  if (a.size() - 1 < db) {
    throw std::logic_error("inexact polynomial division");
  }
  ZPoly q(a.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), a[k + db].get_mpz_t(), b[db].get_mpz_t());
    q[k] = c;
    if (c == 0) {
      continue;
    }
    for (std::size_t i = 0; i <= db; ++i) {
      a[k + i] -= c * b[i];
    }
  }
  ztrim(a);
  if (!a.empty()) {
    throw std::logic_error("inexact polynomial division");
  }
  ztrim(q);
  return q;
}

mpz_class zcontent(const ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    g = gcd(g, c);
  }
  return g;
}

// Integer multiple of p with content 1 and positive leading coefficient.
ZPoly primitive(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) {
    l = lcm(l, mpz_class(c.get_den()));
  }
  ZPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    out.push_back(mpz_class(c.get_num()) * (l / mpz_class(c.get_den())));
  }
  if (out.empty()) {
    return out;
  }
  mpz_class g = zcontent(out);
  if (out.back() < 0) {
    g = -g;
  }
  for (auto& c : out) {
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

ZPoly primitive(ZPoly p) {
  ztrim(p);
  if (p.empty()) {
    return p;
  }
  mpz_class g = zcontent(p);
  if (p.back() < 0) {
    g = -g;
  }
  for (auto& c : p) {
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return p;
}

// lc(b)^k a mod b in Z[t].
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    const mpz_class lead_a = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) {
      c *= b.back();
    }
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] -= lead_a * b[i];
    }
    ztrim(a);
  }
  return a;
}

Polynomial from_z(const ZPoly& p) {
  std::vector<mpq_class> v;
  v.reserve(p.size());
  for (const auto& c : p) {
    v.emplace_back(c);
  }
  return Polynomial(std::move(v));
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  ZPoly x = primitive(a);
  ZPoly y = primitive(b);
  if (x.empty()) {
    return from_z(y);
  }
  while (!y.empty()) {
    ZPoly r = primitive(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return from_z(primitive(std::move(x)));
}

std::string Polynomial::to_string() const {
  if (is_zero()) {
    return "0";
  }
  std::string out;
  bool first = true;
  for (int k = 0; k <= degree(); ++k) {
    const mpq_class& c = coeffs_[k];
    if (c == 0) {
      continue;
    }
    const bool negative = c < 0;
    const mpq_class mag = abs(c);
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string power = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (k == 0) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += power;
    } else {
      out += mag.get_str() + "*" + power;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) {
    throw std::domain_error("rational function with zero denominator");
  }
  const Polynomial g = Polynomial::gcd(num, den);
  Polynomial q;
  Polynomial r;
  Polynomial::divmod(num, g, num_, r);
  Polynomial::divmod(den, g, q, r);
  den_ = q;
  if (den_.coeff(0) == 0) {
    throw std::domain_error("denominator vanishes at t = 0");
  }
  // Scale so the denominator is an integer polynomial with content 1 and a
  // positive constant term.
  mpz_class l = 1;
  for (const auto& c : den_.coeffs()) {
    l = lcm(l, mpz_class(c.get_den()));
  }
  mpz_class content = 0;
  for (const auto& c : den_.coeffs()) {
    content = gcd(content, mpz_class(c.get_num()) * (l / mpz_class(c.get_den())));
  }
  mpq_class scale(l, content);
  if (den_.coeff(0) < 0) {
    scale = -scale;
  }
  scale.canonicalize();
  den_ = den_ * scale;
  num_ = num_ * scale;
}

std::string RationalFunction::to_string() const {
  auto side = [](const Polynomial& p) {
    int terms = 0;
    for (const auto& c : p.coeffs()) {
      terms += c != 0;
    }
    const std::string s = p.to_string();
    return terms > 1 ? "(" + s + ")" : s;
  };
  return side(num_) + " / " + side(den_);
}

// ---------------------------------------------------------------------------
// build_gf

RationalFunction build_gf(int m) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  const int d = m * (m + 1) / 2;
  if (d > kGfDimensionLimit) {
    throw BudgetExceeded("gf(m=" + std::to_string(m) + "): state dimension " + std::to_string(d) + " exceeds " +
                         std::to_string(kGfDimensionLimit));
  }

  // Cells of the triangle in row-major order.
  std::vector<std::pair<int, int>> cells;
  std::vector<std::vector<int>> id(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      id[i][j] = static_cast<int>(cells.size());
      cells.emplace_back(i, j);
    }
  }

  // Augmented system [m I - t (m A) | e_diag], where m A has m - deg - 2 delta
  // on the diagonal and 1 for each triangle neighbour.
  std::vector<std::vector<ZPoly>> a(d, std::vector<ZPoly>(d + 1));
  for (int r = 0; r < d; ++r) {
    const auto [i, j] = cells[r];
    const std::pair<int, int> nbrs[] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
    int deg = 0;
    for (const auto& [k, l] : nbrs) {
      if (k >= 0 && k <= l && l < m) {
        ++deg;
        a[r][id[k][l]] = ZPoly{0, -1};
      }
    }
    const int delta = i == j ? 1 : 0;
    a[r][r] = ZPoly{m, -(m - deg - 2 * delta)};
    ztrim(a[r][r]);
    if (delta) {
      a[r][d] = ZPoly{1};
    }
  }

  // Bareiss forward elimination; pivot is the first nonzero entry by row.
  ZPoly prev{1};
  for (int k = 0; k < d; ++k) {
    int pivot = k;
    while (pivot < d && a[pivot][k].empty()) {
      ++pivot;
    }
    if (pivot == d) {
      throw std::logic_error("singular generating-function system");
    }
    std::swap(a[k], a[pivot]);
    for (int i = k + 1; i < d; ++i) {
      for (int j = k + 1; j <= d; ++j) {
        ZPoly v = zmul(a[k][k], a[i][j]);
        if (!a[i][k].empty() && !a[k][j].empty()) {
          v = zsub(std::move(v), zmul(a[i][k], a[k][j]));
        }
        a[i][j] = v.empty() ? ZPoly{} : zdivexact(std::move(v), prev);
      }
      a[i][k].clear();
    }
    prev = a[k][k];
  }

  // Fraction-free back substitution: x_i = det * X_i.
  const ZPoly& det = a[d - 1][d - 1];
  std::vector<ZPoly> x(d);
  x[d - 1] = a[d - 1][d];
  for (int i = d - 2; i >= 0; --i) {
    ZPoly v = zmul(det, a[i][d]);
    for (int j = i + 1; j < d; ++j) {
      if (!a[i][j].empty() && !x[j].empty()) {
        v = zsub(std::move(v), zmul(a[i][j], x[j]));
      }
    }
    x[i] = zdivexact(std::move(v), a[i][i]);
  }

  ZPoly total;
  for (const auto& xi : x) {
    total = zadd(std::move(total), xi);
  }
  // I(t) = t * sum(X) / (1 - t) = t * total / ((1 - t) det)
  const Polynomial t = Polynomial::monomial(1, 1);
  const Polynomial one_minus_t = Polynomial({1, -1});
  return RationalFunction(t * from_z(total), one_minus_t * from_z(det));
}

std::vector<mpq_class> series(const RationalFunction& rf, int order) {
  if (order < 0) {
    throw std::invalid_argument("series order must be >= 0");
  }
  const auto& den = rf.denominator();
  const auto& num = rf.numerator();
  const mpq_class d0 = den.coeff(0);
  std::vector<mpq_class> out(order + 1);
  for (int n = 0; n <= order; ++n) {
    mpq_class acc = num.coeff(n);
    for (int k = 1; k <= std::min(n, den.degree()); ++k) {
      acc -= den.coeffs()[k] * out[n - k];
    }
    out[n] = acc / d0;
  }
  return out;
}

RationalFunction aperiodic_gf(const RationalFunction& rf, int m, const mpq_class& p) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  if (p <= 0 || p > 1) {
    throw std::invalid_argument("move probability must lie in (0, 1]");
  }
  if (p == 1) {
    return rf;
  }
  const mpq_class q = 1 - p;
  const Polynomial pt = Polynomial::monomial(p, 1);
  const Polynomial hold = Polynomial({mpq_class(1), mpq_class(-q)});
  const int top = std::max(rf.numerator().degree(), rf.denominator().degree());

  std::vector<Polynomial> pt_pow{Polynomial::constant(1)};
  std::vector<Polynomial> hold_pow{Polynomial::constant(1)};
  for (int k = 1; k <= top; ++k) {
    pt_pow.push_back(pt_pow.back() * pt);
    hold_pow.push_back(hold_pow.back() * hold);
  }
  // P(pt / (1 - qt)) * (1 - qt)^top
  auto substitute = [&](const Polynomial& poly) {
    Polynomial out;
    for (int k = 0; k <= poly.degree(); ++k) {
      if (poly.coeffs()[k] != 0) {
        out = out + pt_pow[k] * hold_pow[top - k] * poly.coeffs()[k];
      }
    }
    return out;
  };
  return RationalFunction(substitute(rf.numerator()), substitute(rf.denominator()) * hold);
}

PoleReport pole_check(const RationalFunction& rf, const SpectralTable<Real128>& table, double tol) {
  using boost::multiprecision::abs;
  const auto& den = rf.denominator();
  PoleReport report;
  report.degree = den.degree();

  // Reversed denominator, ascending in x: its roots are the x with den(1/x) = 0.
  std::vector<Real128> r(den.degree() + 1);
  for (int i = 0; i <= den.degree(); ++i) {
    r[i] = real_from_rational<Real128>(den.coeffs()[den.degree() - i]);
  }

  std::vector<Real128> candidates{Real128(1)};
  const int m = table.m;
  for (int j = 0; j <= m; ++j) {
    for (int k = j; k <= m; ++k) {
      if (is_certified_eigenvalue(m, j, k)) {
        candidates.push_back(eigenvalue(table, j, k));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  const Real128 same = Real128(1e-30);
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [&](const Real128& a, const Real128& b) { return abs(a - b) <= same; }),
                   candidates.end());

  for (const auto& c : candidates) {
    PoleMatch match;
    match.x = to_double(c);
    while (r.size() > 1) {
      // A root when the Newton step |R/R'| (distance to the nearest simple
      // root) is below tol, or when R(c) is zero at working precision.
      Real128 value = 0;
      Real128 slope = 0;
      Real128 scale = 0;
      for (auto it = r.rbegin(); it != r.rend(); ++it) {
        slope = slope * c + value;
        value = value * c + *it;
        scale = scale * abs(c) + abs(*it);
      }
      const bool vanishes = abs(value) <= ldexp(scale, -100);
      if (!vanishes && !(abs(value) <= Real128(tol) * abs(slope))) {
        break;
      }
      // Synthetic division by (x - c).
      std::vector<Real128> q(r.size() - 1);
      Real128 carry = 0;
      for (std::size_t i = r.size(); i-- > 1;) {
        carry = r[i] + carry * c;
        q[i - 1] = carry;
      }
      r = std::move(q);
      ++match.multiplicity;
    }
    if (match.multiplicity > 0) {
      report.matched += match.multiplicity;
      report.matches.push_back(match);
    }
  }
  report.pass = report.matched == report.degree;
  return report;
}

}  // namespace invwalk

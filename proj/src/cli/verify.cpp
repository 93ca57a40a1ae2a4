#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "invwalk/chain_dp.hpp"
#include "invwalk/cli.hpp"
#include "invwalk/formulas.hpp"
#include "invwalk/genfun.hpp"
#include "invwalk/simulator.hpp"
#include "invwalk/trig_core.hpp"

namespace invwalk::cli {

namespace {

struct Plan {
  int identity_m;
  int grid_m;
  int grid_n;
  int sandwich_m;
  int sandwich_n;
  int pole_m;
  std::vector<int> mc_m;
  std::vector<std::uint64_t> mc_n;
  std::uint64_t mc_trials;
};

Plan plan_for(VerifyLevel level) {
  if (level == VerifyLevel::kQuick) {
    return {10, 5, 12, 6, 100, 4, {5, 10}, {10, 100}, 20000};
  }
  return {200, 8, 25, 12, 300, 8, {5, 10, 20}, {10, 100, 1000}, 100000};
}

template <class Real>
VerifyCheck identity_sweep(int max_m) {
  const int bits = mantissa_bits<Real>();
  VerifyCheck check{"identities_" + std::to_string(bits), true, ""};
  int failures = 0;
  int first = 0;
  for (int m = 1; m <= max_m; ++m) {
    const auto report = verify_identities(build_table<Real>(m), identity_tolerance(m, bits));
    if (!report.all_pass()) {
      ++failures;
      first = first == 0 ? m : first;
    }
  }
  check.pass = failures == 0;
  check.detail = "m=1.." + std::to_string(max_m) + " failing_m=" + std::to_string(failures) +
                 (first ? " first=" + std::to_string(first) : "");
  return check;
}

// Average inversion count over all m^n generator sequences.
mpq_class enumerate(int m, int n) {
  mpz_class total = 0;
  std::vector<int> seq(n, 0);
  for (;;) {
    std::vector<int> perm(m + 1);
    for (int i = 0; i <= m; ++i) {
      perm[i] = i;
    }
    for (int g : seq) {
      std::swap(perm[g], perm[g + 1]);
    }
    long inv = 0;
    for (int a = 0; a <= m; ++a) {
      for (int b = a + 1; b <= m; ++b) {
        inv += perm[a] > perm[b];
      }
    }
    total += inv;
    int pos = 0;
    while (pos < n && ++seq[pos] == m) {
      seq[pos++] = 0;
    }
    if (pos == n) {
      break;
    }
  }
  mpz_class count;
  mpz_ui_pow_ui(count.get_mpz_t(), m, n);
  mpq_class avg(total, count);
  avg.canonicalize();
  return avg;
}

}  // namespace

std::vector<VerifyCheck> run_verification(VerifyLevel level) {
  const Plan plan = plan_for(level);
  std::vector<VerifyCheck> checks;

  checks.push_back(identity_sweep<double>(plan.identity_m));
  checks.push_back(identity_sweep<Real128>(plan.identity_m));

  {
    VerifyCheck c{"cross_method", true, ""};
    int bad = 0;
    ClosedFormOptions opts;
    opts.precision = 128;
    for (int m = 1; m <= plan.grid_m; ++m) {
      const auto dp = expected_inversions_dp_sequence(m, plan.grid_n);
      const auto gf = series(build_gf(m), plan.grid_n);
      for (int n = 0; n <= plan.grid_n; ++n) {
        const double closed = closed_form(m, n, opts).value;
        const double exact = dp[n].get_d();
        const bool ok = dp[n] == eriksen(m, n) && dp[n] == gf[n] &&
                        std::fabs(closed - exact) <= 1e-9 * std::max(1.0, std::fabs(exact));
        bad += !ok;
      }
    }
    c.pass = bad == 0;
    c.detail = "m<=" + std::to_string(plan.grid_m) + " n<=" + std::to_string(plan.grid_n) +
               " mismatches=" + std::to_string(bad);
    checks.push_back(c);
  }

  {
    VerifyCheck c{"functional_equation", true, ""};
    for (auto [m, order] : {std::pair{1, 6}, std::pair{2, 6}, std::pair{3, 5}}) {
      if (functional_equation_residual(m, order) != 0) {
        c.pass = false;
        c.detail += "m=" + std::to_string(m) + " nonzero; ";
      }
    }
    if (c.pass) {
      c.detail = "residual 0 for (1,6) (2,6) (3,5)";
    }
    checks.push_back(c);
  }

  {
    VerifyCheck c{"spectral_certification", true, ""};
    double worst = 0;
    for (int m : {2, 3}) {
      for (const auto& cert : certify_spectrum(m, 1e-8)) {
        c.pass = c.pass && cert.pass;
        worst = std::max(worst, cert.determinant);
      }
    }
    std::ostringstream d;
    d << "m=2,3 max|det|=" << worst;
    c.detail = d.str();
    checks.push_back(c);
  }

  {
    VerifyCheck c{"brute_force", true, ""};
    const int max_n = level == VerifyLevel::kQuick ? 6 : 8;
    for (int m = 1; m <= 3; ++m) {
      const auto dp = expected_inversions_dp_sequence(m, max_n);
      for (int n = 0; n <= max_n; ++n) {
        c.pass = c.pass && dp[n] == enumerate(m, n);
      }
    }
    c.detail = "m<=3 n<=" + std::to_string(max_n);
    checks.push_back(c);
  }

  {
    VerifyCheck c{"bounds_sandwich", true, ""};
    for (int m = 3; m <= plan.sandwich_m; ++m) {
      const auto dp = expected_inversions_dp_sequence(m, plan.sandwich_n);
      for (int n = 0; n <= plan.sandwich_n; ++n) {
        c.pass = c.pass && sandwich_holds(m, n, dp[n]);
      }
    }
    c.detail = "m=3.." + std::to_string(plan.sandwich_m) + " n<=" + std::to_string(plan.sandwich_n);
    checks.push_back(c);
  }

  {
    VerifyCheck c{"dp_symmetry", true, ""};
    for (int m = 1; m <= 6; ++m) {
      InversionState s(m);
      for (int n = 0; n < 40; ++n) {
        s = dp_step(s);
        c.pass = c.pass && symmetry_check(s);
      }
    }
    c.detail = "m<=6 n<=40";
    checks.push_back(c);
  }

  {
    VerifyCheck c{"gf_poles", true, ""};
    for (int m = 1; m <= plan.pole_m; ++m) {
      c.pass = c.pass && pole_check(build_gf(m), build_table<Real128>(m)).pass;
    }
    c.detail = "m<=" + std::to_string(plan.pole_m);
    checks.push_back(c);
  }

  {
    VerifyCheck c{"monte_carlo", true, ""};
    int cells = 0;
    int misses = 0;
    for (int m : plan.mc_m) {
      for (std::uint64_t n : plan.mc_n) {
        const auto s = monte_carlo(m, n, plan.mc_trials, 20240601);
        const double exact = expected_inversions_dp(m, n).get_d();
        ++cells;
        misses += std::fabs(s.mean - exact) > 4 * s.standard_error;
      }
    }
    c.pass = misses <= 1;
    c.detail = std::to_string(cells - misses) + "/" + std::to_string(cells) + " cells within 4 sigma";
    checks.push_back(c);
  }

  return checks;
}

}  // namespace invwalk::cli

#include "invwalk/simulator.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "invwalk/common.hpp"

namespace invwalk {

LazyRule::LazyRule(double prob) : p(prob) {
  if (!(prob > 0) || prob > 1) {
    throw std::invalid_argument("lazy probability must lie in (0, 1]");
  }
  always = prob == 1;
  if (!always) {
    threshold = static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(prob), 64));
  }
}

std::uint64_t simulate_once(int m, std::uint64_t n, TrialStream& stream, const std::optional<LazyRule>& lazy) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  std::vector<int> perm(m + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t inversions = 0;
  const bool may_hold = lazy && !lazy->always;
  for (std::uint64_t step = 0; step < n; ++step) {
    if (may_hold && stream.next_u64() >= lazy->threshold) {
      continue;
    }
    const auto i = static_cast<std::size_t>(stream.uniform(static_cast<std::uint64_t>(m)));
    inversions += perm[i] < perm[i + 1] ? 1 : -1;
    std::swap(perm[i], perm[i + 1]);
  }
  return static_cast<std::uint64_t>(inversions);
}

bool SimulationSummary::same_result(const SimulationSummary& o) const {
  return m == o.m && n == o.n && trials == o.trials && lazy_p == o.lazy_p && mean == o.mean &&
         variance == o.variance && standard_error == o.standard_error && seed == o.seed;
}

namespace {

struct Partial {
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
};

mpz_class to_mpz(unsigned __int128 v) {
  mpz_class hi(static_cast<unsigned long>(v >> 64));
  mpz_class lo(static_cast<unsigned long>(v));
  return (hi << 64) + lo;
}

}  // namespace

SimulationSummary monte_carlo(int m, std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                              std::optional<double> lazy_p, int workers) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  if (trials < 2) {
    throw std::invalid_argument("monte carlo needs at least 2 trials");
  }
  if (workers < 1) {
    throw std::invalid_argument("workers must be >= 1");
  }
  check_budget(static_cast<long double>(trials) * static_cast<long double>(n),
               "simulate(m=" + std::to_string(m) + ", n=" + std::to_string(n) + ", trials=" + std::to_string(trials) + ")");
  std::optional<LazyRule> lazy;
  if (lazy_p) {
    lazy.emplace(*lazy_p);
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<Partial> partials(workers);
  auto work = [&](int w) {
    Partial& acc = partials[w];
    for (std::uint64_t k = static_cast<std::uint64_t>(w); k < trials; k += static_cast<std::uint64_t>(workers)) {
      TrialStream stream(seed, k);
      const std::uint64_t count = simulate_once(m, n, stream, lazy);
      acc.sum += count;
      acc.sum_sq += static_cast<unsigned __int128>(count) * count;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  mpz_class sum = 0;
  mpz_class sum_sq = 0;
  for (const auto& p : partials) {
    sum += to_mpz(p.sum);
    sum_sq += to_mpz(p.sum_sq);
  }
  const mpz_class t(std::to_string(trials));
  mpq_class mean(sum, t);
  mpq_class variance(t * sum_sq - sum * sum, t * (t - 1));
  mean.canonicalize();
  variance.canonicalize();

  SimulationSummary s;
  s.m = m;
  s.n = n;
  s.trials = trials;
  s.lazy_p = lazy_p;
  s.seed = seed;
  s.mean = mean.get_d();
  s.variance = variance.get_d();
  s.standard_error = std::sqrt(s.variance / static_cast<double>(trials));
  s.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace invwalk

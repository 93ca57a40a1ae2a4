#pragma once

#include <cstdint>
#include <optional>

#include "invwalk/philox.hpp"

namespace invwalk {

/// Lazy move rule: a step is taken when the next 64-bit draw is below
/// `threshold` = floor(p 2^64); p = 1 means always move.
struct LazyRule {
  explicit LazyRule(double p);
  bool always = false;
  std::uint64_t threshold = 0;
  double p = 1;
};

/// Runs n steps from the identity of S_{m+1} and returns the inversion
/// count. Each step swaps positions i, i+1 for a uniform i < m, which
/// changes the count by exactly +1 (the pair was in order) or -1.
std::uint64_t simulate_once(int m, std::uint64_t n, TrialStream& stream,
                            const std::optional<LazyRule>& lazy = std::nullopt);

struct SimulationSummary {
  int m = 0;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::optional<double> lazy_p;
  double mean = 0;
  double variance = 0;        // unbiased
  double standard_error = 0;  // sqrt(variance / trials)
  std::uint64_t seed = 0;
  double elapsed = 0;         // seconds

  /// Equality of everything except elapsed.
  bool same_result(const SimulationSummary& o) const;
};

/// `trials` independent runs; trial k draws from TrialStream(seed, k), so
/// the summary does not depend on `workers`. Sums are exact integers.
/// Throws std::invalid_argument for trials < 2 or workers < 1, and
/// BudgetExceeded when trials * n exceeds the work budget.
SimulationSummary monte_carlo(int m, std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                              std::optional<double> lazy_p = std::nullopt, int workers = 1);

}  // namespace invwalk

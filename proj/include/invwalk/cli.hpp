#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace invwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitArgumentError = 2;
inline constexpr int kExitBudgetRefused = 3;

/// Parses `args` (without the program name), runs the subcommand and
/// writes its table to `out`. Failures produce exactly one JSON line on
/// `err`: {"error":"argument|budget|verification|internal","message":...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Evaluates a step-count expression in m: numbers (including a/b), m,
/// pi, log(...), parentheses and + - * / ^. The result is rounded to the
/// nearest integer; negative or non-finite values throw std::invalid_argument.
std::uint64_t evaluate_n_expression(const std::string& expr, int m);

/// Parses "5", "3,5,8" or "lo:hi[:step]" into a list of m values.
std::vector<int> parse_m_list(const std::string& text);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& field);

enum class VerifyLevel { kQuick, kFull };

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Cross-method invariant suite behind `verify`.
std::vector<VerifyCheck> run_verification(VerifyLevel level);

}  // namespace invwalk::cli

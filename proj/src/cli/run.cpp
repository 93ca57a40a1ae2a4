#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "invwalk/asymptotics.hpp"
#include "invwalk/chain_dp.hpp"
#include "invwalk/cli.hpp"
#include "invwalk/common.hpp"
#include "invwalk/formulas.hpp"
#include "invwalk/genfun.hpp"
#include "invwalk/simd/kernels.hpp"
#include "invwalk/simulator.hpp"

namespace invwalk::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Row {
  int m = 0;
  std::uint64_t n = 0;
  std::string method;
  std::string value;
  std::string precision_bits;
  std::string flags;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string decimal(const mpq_class& q) { return fmt_double(q.get_d()); }

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "m,n,method,value,precision_bits,flags\n";
  for (const auto& r : rows) {
    os << r.m << ',' << r.n << ',' << csv_field(r.method) << ',' << csv_field(r.value) << ','
       << csv_field(r.precision_bits) << ',' << csv_field(r.flags) << '\n';
  }
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    out += (out.empty() ? "" : ";") + f;
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Options {
  std::string format;
  std::string default_format = "json";
  bool no_meta = false;
  std::string output;
};

class Session {
 public:
  Session(const Options& opts, std::ostream& out) : opts_(opts), out_(out) {
    if (opts_.format.empty()) {
      opts_.format = opts_.default_format;
    }
  }

  bool csv() const { return opts_.format == "csv"; }
  bool text() const { return opts_.format == "text"; }

  std::ostream& stream() {
    if (opts_.output.empty()) {
      return out_;
    }
    if (!file_) {
      file_.emplace(opts_.output);
      if (!*file_) {
        throw std::invalid_argument("cannot open output file '" + opts_.output + "'");
      }
    }
    return *file_;
  }

  void emit_json(Json j) {
    if (!opts_.no_meta) {
      j["meta"] = meta();
    }
    stream() << j.dump() << '\n';
  }

  void emit_rows(const std::vector<Row>& rows) { write_csv(stream(), rows); }

 private:
  Json meta() const {
    Json m;
    m["tool"] = "invwalk";
    m["version"] = kVersion;
    m["simd"] = std::string(simd::isa_name(simd::active_isa()));
    m["work_budget"] = work_budget();
    m["generated_at"] = utc_timestamp();
    m["elapsed_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return m;
  }

  Options opts_;
  std::ostream& out_;
  std::optional<std::ofstream> file_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void add_common(CLI::App* sub, Options& o, const std::vector<std::string>& formats) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  sub->add_flag("--no-meta", o.no_meta, "Omit the meta object (timestamps, timings) from JSON");
  sub->add_option("--output", o.output, "Write to this file instead of stdout");
}

Json closed_json(int m, std::uint64_t n, const ClosedFormOptions& co, const ClosedFormResult& r) {
  Json j;
  j["method"] = "closed";
  j["variant"] = variant_name(co.variant);
  j["m"] = m;
  j["n"] = n;
  j["value"] = r.value;
  j["decimal"] = r.decimal;
  j["precision_bits"] = r.precision;
  j["saturated"] = r.saturated;
  return j;
}

Json regime_json(const RegimeEstimate& e) {
  Json j;
  j["regime"] = regime_name(e.regime);
  j["predicted"] = e.predicted;
  j["raw"] = e.raw;
  j["normalizer"] = e.normalizer;
  j["kappa"] = e.kappa ? Json(*e.kappa) : Json(nullptr);
  j["clamped"] = e.clamped;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  j["thresholds"] = "engineering choice";
  return j;
}

bool closed_affordable(int m, std::uint64_t n) {
  const long double work = static_cast<long double>(m + 1) * (m + 1) * std::log2(static_cast<long double>(n) + 2);
  return work <= static_cast<long double>(work_budget());
}

// Values for `sweep`, one row per (m, n, method).
Row sweep_row(const std::string& method, int m, std::uint64_t n, int precision, std::uint64_t trials,
              std::uint64_t seed) {
  Row r{m, n, method, "", "", ""};
  if (method == "dp") {
    r.value = decimal(expected_inversions_dp(m, n));
    r.flags = "exact";
  } else if (method == "dp_float") {
    r.value = fmt_double(expected_inversions_dp_float(m, n));
    r.precision_bits = "53";
    r.flags = "approximate";
  } else if (method == "eriksen") {
    r.value = decimal(eriksen(m, n));
    r.flags = "exact";
  } else if (method == "gf") {
    const auto s = series(build_gf(m), static_cast<int>(n));
    r.value = decimal(s[n]);
    r.flags = "exact";
  } else if (method == "closed") {
    ClosedFormOptions co;
    co.precision = precision;
    const auto cf = closed_form(m, n, co);
    r.value = fmt_double(cf.value);
    r.precision_bits = std::to_string(cf.precision);
    r.flags = cf.saturated ? "saturated" : "";
  } else if (method == "asym") {
    const auto e = predict(m, n);
    r.value = fmt_double(e.predicted);
    r.precision_bits = "53";
    std::vector<std::string> flags{"regime=" + regime_name(e.regime), "normalizer=" + e.normalizer};
    if (e.kappa) {
      flags.push_back("kappa=" + fmt_double(*e.kappa));
    }
    if (e.clamped) {
      flags.push_back("clamped");
    }
    r.flags = join_flags(flags);
  } else if (method == "lower" || method == "upper") {
    const auto b = bounds(m, n);
    r.value = fmt_double(method == "lower" ? b.lower : b.upper);
    r.precision_bits = "53";
  } else if (method == "simulate") {
    const auto s = monte_carlo(m, n, trials, seed);
    r.value = fmt_double(s.mean);
    r.precision_bits = "53";
    r.flags = "stderr=" + fmt_double(s.standard_error) + ";trials=" + std::to_string(trials);
  } else {
    throw std::invalid_argument("unknown sweep method '" + method + "'");
  }
  return r;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Expected inversions of random adjacent-transposition walks", "invwalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options opts;
  int m = 0;
  std::uint64_t n = 0;
  int precision = 53;
  std::string variant = "theorem1";
  std::string p_text;
  std::function<int(Session&)> action;

  auto need_mn = [&](CLI::App* sub) {
    sub->add_option("--m", m, "Chain acts on S_{m+1}")->required()->check(CLI::PositiveNumber);
    sub->add_option("--n", n, "Number of steps")->required();
  };

  auto* exact = app.add_subcommand("exact", "Exact I_{m,n} from the DP recursion");
  need_mn(exact);
  add_common(exact, opts, {"json", "csv"});
  exact->callback([&] {
    action = [&](Session& s) {
      const mpq_class v = expected_inversions_dp(m, n);
      if (s.csv()) {
        s.emit_rows({{m, n, "dp", decimal(v), "", "exact"}});
      } else {
        Json j;
        j["method"] = "dp";
        j["m"] = m;
        j["n"] = n;
        j["value"] = rational_string(v);
        s.emit_json(j);
      }
      return kExitOk;
    };
  });

  auto* eriksen_cmd = app.add_subcommand("eriksen", "Exact I_{m,n} from Eriksen's binomial formula");
  need_mn(eriksen_cmd);
  add_common(eriksen_cmd, opts, {"json", "csv"});
  eriksen_cmd->callback([&] {
    action = [&](Session& s) {
      const mpq_class v = eriksen(m, n);
      if (s.csv()) {
        s.emit_rows({{m, n, "eriksen", decimal(v), "", "exact"}});
      } else {
        Json j;
        j["method"] = "eriksen";
        j["m"] = m;
        j["n"] = n;
        j["value"] = rational_string(v);
        s.emit_json(j);
      }
      return kExitOk;
    };
  });

  bool no_symmetry = false;
  bool no_materialize = false;
  auto* closed = app.add_subcommand("closed", "Spectral closed form for I_{m,n}");
  need_mn(closed);
  closed->add_option("--precision", precision, "Working precision in bits (53, <=128, <=256)");
  closed->add_option("--variant", variant, "theorem1 | ser2 | ser3")
      ->check(CLI::IsMember({"theorem1", "ser2", "ser3"}));
  closed->add_flag("--no-symmetry", no_symmetry, "Sum all (j,k) pairs instead of one per mirror pair");
  closed->add_flag("--no-materialize", no_materialize, "Evaluate powers row by row");
  add_common(closed, opts, {"json", "csv"});
  closed->callback([&] {
    action = [&](Session& s) {
      ClosedFormOptions co;
      co.variant = parse_variant(variant);
      co.precision = precision;
      co.exploit_symmetry = !no_symmetry;
      co.materialize_x = !no_materialize;
      const auto r = closed_form(m, n, co);
      if (s.csv()) {
        s.emit_rows({{m, n, "closed_" + variant, r.decimal, std::to_string(r.precision), r.saturated ? "saturated" : ""}});
      } else {
        s.emit_json(closed_json(m, n, co, r));
      }
      return kExitOk;
    };
  });

  auto* bounds_cmd = app.add_subcommand("bounds", "Dominant-eigenvalue bounds on I_{m,n} (m >= 3)");
  need_mn(bounds_cmd);
  add_common(bounds_cmd, opts, {"json", "csv"});
  bounds_cmd->callback([&] {
    action = [&](Session& s) {
      const auto b = bounds(m, n);
      if (s.csv()) {
        s.emit_rows({{m, n, "bounds_lower", fmt_double(b.lower), "53", ""},
                     {m, n, "bounds_upper", fmt_double(b.upper), "53", ""}});
      } else {
        Json j;
        j["method"] = "bounds";
        j["m"] = m;
        j["n"] = n;
        j["lower"] = b.lower;
        j["upper"] = b.upper;
        j["precision_bits"] = 53;
        s.emit_json(j);
      }
      return kExitOk;
    };
  });

  auto* lazy = app.add_subcommand("lazy", "Exact expectation for the lazy chain moving with probability p");
  need_mn(lazy);
  lazy->add_option("--p", p_text, "Move probability, e.g. 1/2 or 0.75 (default m/(m+1))");
  add_common(lazy, opts, {"json", "csv"});
  lazy->callback([&] {
    action = [&](Session& s) {
      const mpq_class p = p_text.empty() ? default_lazy_p(m) : parse_rational(p_text);
      const mpq_class v = aperiodic_expected(m, n, p);
      if (s.csv()) {
        s.emit_rows({{m, n, "lazy", decimal(v), "", "exact;p=" + rational_string(p)}});
      } else {
        Json j;
        j["method"] = "lazy";
        j["m"] = m;
        j["n"] = n;
        j["p"] = rational_string(p);
        j["value"] = rational_string(v);
        s.emit_json(j);
      }
      return kExitOk;
    };
  });

  int series_order = -1;
  bool check_poles = false;
  auto* gf = app.add_subcommand("gf", "Exact rational generating function I_m(t)");
  gf->add_option("--m", m, "Chain acts on S_{m+1}")->required()->check(CLI::PositiveNumber);
  gf->add_option("--p", p_text, "Move probability for the lazy chain's generating function");
  gf->add_option("--series", series_order, "Also print coefficients of t^0..t^N");
  gf->add_flag("--check-poles", check_poles, "Match denominator roots against the spectral values");
  add_common(gf, opts, {"text", "json", "csv"});
  gf->callback([&] {
    opts.default_format = "text";
    action = [&](Session& s) {
      RationalFunction rf = build_gf(m);
      if (!p_text.empty()) {
        rf = aperiodic_gf(rf, m, parse_rational(p_text));
      }
      std::vector<mpq_class> coeffs;
      if (series_order >= 0) {
        coeffs = series(rf, series_order);
      }
      std::optional<PoleReport> poles;
      if (check_poles) {
        poles = pole_check(rf, build_table<Real128>(m));
      }
      const bool lazy_gf = !p_text.empty() && parse_rational(p_text) != 1;
      if (s.csv()) {
        if (series_order < 0) {
          throw std::invalid_argument("gf --format csv needs --series N");
        }
        std::vector<Row> rows;
        for (int k = 0; k <= series_order; ++k) {
          rows.push_back({m, static_cast<std::uint64_t>(k), lazy_gf ? "gf_lazy" : "gf", decimal(coeffs[k]), "", "exact"});
        }
        s.emit_rows(rows);
      } else if (s.text()) {
        auto& os = s.stream();
        os << rf.to_string() << '\n';
        if (series_order >= 0) {
          os << "series:";
          for (const auto& c : coeffs) {
            os << ' ' << rational_string(c);
          }
          os << '\n';
        }
        if (poles) {
          os << "poles: " << (poles->pass ? "pass" : "fail") << ' ' << poles->matched << '/' << poles->degree << '\n';
        }
      } else {
        Json j;
        j["method"] = lazy_gf ? "gf_lazy" : "gf";
        j["m"] = m;
        if (lazy_gf) {
          j["p"] = rational_string(parse_rational(p_text));
        }
        j["text"] = rf.to_string();
        Json num = Json::array();
        for (const auto& c : rf.numerator().coeffs()) {
          num.push_back(rational_string(c));
        }
        Json den = Json::array();
        for (const auto& c : rf.denominator().coeffs()) {
          den.push_back(rational_string(c));
        }
        j["numerator"] = num;
        j["denominator"] = den;
        if (series_order >= 0) {
          Json ser = Json::array();
          for (const auto& c : coeffs) {
            ser.push_back(rational_string(c));
          }
          j["series"] = ser;
        }
        if (poles) {
          Json pj;
          pj["pass"] = poles->pass;
          pj["matched"] = poles->matched;
          pj["degree"] = poles->degree;
          Json matches = Json::array();
          for (const auto& pm : poles->matches) {
            matches.push_back({{"x", pm.x}, {"multiplicity", pm.multiplicity}});
          }
          pj["matches"] = matches;
          j["poles"] = pj;
        }
        s.emit_json(j);
      }
      return poles && !poles->pass ? kExitVerificationFailed : kExitOk;
    };
  });

  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> lazy_p_text;
  int workers = 1;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of I_{m,n}");
  need_mn(sim);
  sim->add_option("--trials", trials, "Independent runs (>= 2)")->required();
  sim->add_option("--seed", seed, "64-bit seed")->required();
  sim->add_option("--lazy-p", lazy_p_text, "Move probability for the lazy chain");
  sim->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_common(sim, opts, {"json", "csv"});
  sim->callback([&] {
    action = [&](Session& s) {
      std::optional<double> lp;
      if (lazy_p_text) {
        lp = parse_rational(*lazy_p_text).get_d();
      }
      const auto r = monte_carlo(m, n, trials, seed, lp, workers);
      if (s.csv()) {
        s.emit_rows({{m, n, lp ? "simulate_lazy" : "simulate", fmt_double(r.mean), "53",
                      "stderr=" + fmt_double(r.standard_error) + ";trials=" + std::to_string(trials) +
                          ";seed=" + std::to_string(seed)}});
      } else {
        Json j;
        j["method"] = lp ? "simulate_lazy" : "simulate";
        j["m"] = m;
        j["n"] = n;
        j["trials"] = trials;
        j["seed"] = seed;
        j["lazy_p"] = lp ? Json(*lp) : Json(nullptr);
        j["mean"] = r.mean;
        j["variance"] = r.variance;
        j["stderr"] = r.standard_error;
        j["precision_bits"] = 53;
        s.emit_json(j);
      }
      return kExitOk;
    };
  });

  std::optional<double> f_arg;
  std::optional<double> g_arg;
  bool consistency = false;
  std::string f_method = "series";
  double tol = 1e-12;
  std::optional<int> asym_m;
  std::optional<std::uint64_t> asym_n;
  auto* asym = app.add_subcommand("asym", "Asymptotic regime laws");
  asym->add_option("--m", asym_m, "With --n: classify and predict I_{m,n}");
  asym->add_option("--n", asym_n, "Number of steps");
  asym->add_option("--f", f_arg, "Evaluate f(kappa)");
  asym->add_option("--g", g_arg, "Evaluate g(kappa)");
  asym->add_flag("--consistency", consistency, "Check sqrt(kappa) f(kappa) and g(kappa)/sqrt(kappa) limits");
  asym->add_option("--method", f_method, "f evaluation: series | quadrature")
      ->check(CLI::IsMember({"series", "quadrature"}));
  asym->add_option("--tol", tol, "Evaluation tolerance");
  add_common(asym, opts, {"json", "csv"});
  asym->callback([&] {
    const int modes = (asym_m || asym_n) + f_arg.has_value() + g_arg.has_value() + consistency;
    if (modes != 1 || (asym_m.has_value() != asym_n.has_value())) {
      throw CLI::ValidationError("asym", "use exactly one of --m/--n, --f, --g, --consistency");
    }
    action = [&](Session& s) {
      if (f_arg || g_arg) {
        const bool is_f = f_arg.has_value();
        const double kappa = is_f ? *f_arg : *g_arg;
        const double v = is_f ? f_kappa(kappa, f_method == "series" ? FMethod::kSeries : FMethod::kQuadrature, tol)
                              : g_kappa(kappa, tol);
        if (s.csv()) {
          s.emit_rows({{0, 0, is_f ? "f_" + f_method : "g", fmt_double(v), "53", "kappa=" + fmt_double(kappa)}});
        } else {
          Json j;
          j["method"] = is_f ? "f" : "g";
          if (is_f) {
            j["evaluation"] = f_method;
          }
          j["kappa"] = kappa;
          j["value"] = v;
          j["tol"] = tol;
          s.emit_json(j);
        }
        return kExitOk;
      }
      if (consistency) {
        const auto rep = consistency_limits(tol);
        if (s.csv()) {
          std::vector<Row> rows;
          for (const auto& p : rep.f_side) {
            rows.push_back({0, 0, "sqrt_kappa_f", fmt_double(p.value), "53", "kappa=" + fmt_double(p.kappa)});
          }
          for (const auto& p : rep.g_side) {
            rows.push_back({0, 0, "g_over_sqrt_kappa", fmt_double(p.value), "53", "kappa=" + fmt_double(p.kappa)});
          }
          s.emit_rows(rows);
        } else {
          Json j;
          j["method"] = "consistency";
          j["limit"] = rep.limit;
          auto side = [](const std::vector<ConsistencyPoint>& pts) {
            Json a = Json::array();
            for (const auto& p : pts) {
              a.push_back({{"kappa", p.kappa}, {"value", p.value}, {"deviation", p.deviation}});
            }
            return a;
          };
          j["sqrt_kappa_f"] = side(rep.f_side);
          j["g_over_sqrt_kappa"] = side(rep.g_side);
          j["f_monotone"] = rep.f_monotone;
          j["g_monotone"] = rep.g_monotone;
          j["f_within_2pct"] = rep.f_within_band;
          j["g_within_2pct"] = rep.g_within_band;
          j["pass"] = rep.pass;
          s.emit_json(j);
        }
        return rep.pass ? kExitOk : kExitVerificationFailed;
      }
      const auto e = predict(*asym_m, *asym_n);
      std::optional<double> closed_value;
      if (closed_affordable(*asym_m, *asym_n)) {
        closed_value = closed_form(*asym_m, *asym_n).value;
      }
      if (s.csv()) {
        std::vector<Row> rows{sweep_row("asym", *asym_m, *asym_n, 53, 0, 0)};
        if (closed_value) {
          rows.push_back({*asym_m, *asym_n, "closed", fmt_double(*closed_value), "53", ""});
        }
        s.emit_rows(rows);
      } else {
        Json j;
        j["method"] = "asym";
        j["m"] = *asym_m;
        j["n"] = *asym_n;
        const Json regime = regime_json(e);
        for (const auto& [k, v] : regime.items()) {
          j[k] = v;
        }
        j["closed_form"] = closed_value ? Json(*closed_value) : Json(nullptr);
        j["ratio"] = closed_value && *closed_value != 0 ? Json(e.predicted / *closed_value) : Json(nullptr);
        s.emit_json(j);
      }
      return kExitOk;
    };
  });

  std::string level = "quick";
  auto* verify = app.add_subcommand("verify", "Run the cross-method invariant suite");
  verify->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  add_common(verify, opts, {"json", "csv"});
  verify->callback([&] {
    action = [&](Session& s) {
      const auto checks = run_verification(level == "full" ? VerifyLevel::kFull : VerifyLevel::kQuick);
      bool all = true;
      for (const auto& c : checks) {
        all = all && c.pass;
      }
      if (s.csv()) {
        auto& os = s.stream();
        os << "check,pass,detail\n";
        for (const auto& c : checks) {
          os << csv_field(c.name) << ',' << (c.pass ? "true" : "false") << ',' << csv_field(c.detail) << '\n';
        }
      } else {
        Json j;
        j["method"] = "verify";
        j["level"] = level;
        Json arr = Json::array();
        for (const auto& c : checks) {
          arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        }
        j["checks"] = arr;
        j["pass"] = all;
        s.emit_json(j);
      }
      if (!all) {
        throw VerificationFailed("verification failed at level " + level);
      }
      return kExitOk;
    };
  });

  std::string m_list;
  std::vector<std::string> n_exprs;
  std::vector<std::string> methods{"closed"};
  std::uint64_t sweep_trials = 10000;
  std::uint64_t sweep_seed = 1;
  auto* sweep = app.add_subcommand("sweep", "Table of (m, n, method, value) over a grid");
  sweep->add_option("--m", m_list, "m values: 10,20,40 or lo:hi[:step]")->required();
  sweep->add_option("--n", n_exprs, "n as expressions in m, e.g. m, m^2, 1/10*m^3*log(m) (repeatable)")
      ->required();
  sweep->add_option("--method", methods,
                    "dp | dp_float | eriksen | gf | closed | asym | lower | upper | simulate (repeatable)");
  sweep->add_option("--precision", precision, "Closed-form precision in bits");
  sweep->add_option("--trials", sweep_trials, "Trials for the simulate method");
  sweep->add_option("--seed", sweep_seed, "Seed for the simulate method");
  add_common(sweep, opts, {"csv", "json"});
  sweep->callback([&] {
    opts.default_format = "csv";
    action = [&](Session& s) {
      std::vector<Row> rows;
      for (int mv : parse_m_list(m_list)) {
        for (const auto& expr : n_exprs) {
          const std::uint64_t nv = evaluate_n_expression(expr, mv);
          for (const auto& method : methods) {
            rows.push_back(sweep_row(method, mv, nv, precision, sweep_trials, sweep_seed));
          }
        }
      }
      if (s.csv()) {
        s.emit_rows(rows);
      } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
          arr.push_back({{"m", r.m},
                         {"n", r.n},
                         {"method", r.method},
                         {"value", r.value},
                         {"precision_bits", r.precision_bits},
                         {"flags", r.flags}});
        }
        Json j;
        j["method"] = "sweep";
        j["rows"] = arr;
        s.emit_json(j);
      }
      return kExitOk;
    };
  });

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  }
  Session session(opts, out);
  return action(session);
}

void error_line(std::ostream& err, const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out);
  } catch (const CLI::ParseError& e) {
    error_line(err, "argument", e.what());
    return kExitArgumentError;
  } catch (const BudgetExceeded& e) {
    error_line(err, "budget", e.what());
    return kExitBudgetRefused;
  } catch (const VerificationFailed& e) {
    error_line(err, "verification", e.what());
    return kExitVerificationFailed;
  } catch (const std::invalid_argument& e) {
    error_line(err, "argument", e.what());
    return kExitArgumentError;
  } catch (const std::domain_error& e) {
    error_line(err, "argument", e.what());
    return kExitArgumentError;
  } catch (const std::out_of_range& e) {
    error_line(err, "argument", e.what());
    return kExitArgumentError;
  } catch (const std::exception& e) {
    error_line(err, "internal", e.what());
    return kExitVerificationFailed;
  }
}

}  // namespace invwalk::cli

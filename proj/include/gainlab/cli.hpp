#pragma once

// Command-line front end. `run` is the whole program minus process plumbing,
// so it can be driven in-process by tests.
//
// Exit codes: 0 success, 1 invalid solution, 2 usage error, 3 resource limit
// (factorization budget, box ceiling).

#include "gainlab/bigmath.hpp"
#include "gainlab/corpus.hpp"
#include "gainlab/factor.hpp"
#include "gainlab/gains.hpp"
#include "gainlab/report.hpp"
#include "gainlab/search.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace gainlab::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kUsage = 2, kResource = 3 };

inline constexpr const char* kBudgetEnv = "GAINLAB_FACTOR_BUDGET";

class usage_error : public error {
 public:
  using error::error;
};

struct RunConfig {
  std::string command;
  OutputFormat format = OutputFormat::json;
  int precision_digits = kDefaultDisplayDigits;
  std::optional<QMax> qmax;
  unsigned threads = 0;
  FactorBudget budget;

  // analyze / bounds
  std::string n, x, y, A, B, k;
  // search / hunt
  std::string n_range, x_range, y_range, A_range, B_range, k_range;
  std::optional<std::string> q_threshold;
  bool allow_trivial_x = false;
};

inline Interval parse_range(const std::string& flag, const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19) {
      throw usage_error(flag + ": expected LO:HI with nonnegative integers, got '" + text + "'");
    }
    return std::stoull(s);
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const auto v = number(text);
    return {v, v};
  }
  Interval iv{number(text.substr(0, colon)), number(text.substr(colon + 1))};
  if (iv.lo > iv.hi) throw usage_error(flag + ": empty range '" + text + "'");
  return iv;
}

inline Natural parse_natural(const std::string& flag, const std::string& text) {
  try {
    return Natural::parse(text);
  } catch (const undefined_input&) {
    throw usage_error(flag + ": expected a nonnegative integer, got '" + text + "'");
  }
}

inline std::uint64_t parse_exponent(const std::string& text) {
  const Natural n = parse_natural("--n", text);
  if (!n.fits_u64()) throw usage_error("--n: exponent too large");
  return n.to_u64();
}

inline FactorBudget budget_from_env() {
  FactorBudget b;
  if (const char* env = std::getenv(kBudgetEnv); env != nullptr && *env != '\0') {
    const std::string s(env);
    if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19) {
      throw usage_error(std::string(kBudgetEnv) + " must be a nonnegative integer");
    }
    b.rho_iterations = std::stoull(s);
  }
  return b;
}

namespace detail {

inline ojson validation_json(const ValidationReport& r) {
  ojson j;
  j["valid"] = false;
  j["violations"] = ojson::array();
  for (const auto& v : r.violations) j["violations"].push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
  j["residual"] = r.residual ? ojson(r.residual->str()) : ojson(nullptr);
  return j;
}

inline int run_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::uint64_t n = parse_exponent(c.n);
  auto validated = validate_solution(n, parse_natural("--x", c.x), parse_natural("--y", c.y),
                                     parse_natural("--A", c.A), parse_natural("--B", c.B),
                                     parse_natural("--k", c.k));
  if (auto* rep = std::get_if<ValidationReport>(&validated)) {
    err << "invalid solution: " << rep->summary() << '\n';
    if (c.format == OutputFormat::json) out << validation_json(*rep).dump(2) << '\n';
    return kInvalid;
  }
  Factorizer factorizer(c.budget);
  const GainReport report = compute_gains(std::get<Solution>(validated), factorizer, c.qmax);
  emit_report(out, report, c.format, c.precision_digits);
  return kOk;
}

inline int run_bounds(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::uint64_t n = parse_exponent(c.n);
  const QMax q = c.qmax.value_or(QMax::strong());
  BoundsReport b;
  try {
    b = make_bounds_report(n, parse_natural("--A", c.A), parse_natural("--B", c.B), parse_natural("--y", c.y), q);
  } catch (const undefined_input& e) {
    throw usage_error(e.what());
  }
  if (!b.max_admissible_exponent) err << "note: q_max <= 1 excludes every exponent (out of model)\n";
  emit_report(out, b, c.format, c.precision_digits);
  return kOk;
}

inline int run_search_command(const RunConfig& c, SearchMode mode, std::ostream& out, std::ostream& err) {
  SearchBox box;
  box.mode = mode;
  box.n = parse_range("--n", c.n_range);
  box.x = parse_range("--x", c.x_range);
  box.y = parse_range("--y", c.y_range);
  box.A = parse_range("--A", c.A_range);
  box.B = parse_range("--B", c.B_range);
  if (mode == SearchMode::fixed_k) box.k = parse_range("--k", c.k_range);
  box.require_nontrivial = !c.allow_trivial_x;
  if (c.q_threshold) {
    try {
      box.q_threshold = parse_real(*c.q_threshold);
    } catch (const undefined_input&) {
      throw usage_error("--q-threshold: not a real number");
    }
  }

  SearchOptions opts;
  opts.threads = c.threads;
  opts.budget = c.budget;
  opts.custom_qmax = c.qmax;
  opts.progress = [&err](std::uint64_t done, std::uint64_t total) {
    err << "progress: " << done << "/" << total << " cells\n";
  };
  SearchResult result;
  try {
    result = run_search(box, opts);
  } catch (const invalid_box& e) {
    throw usage_error(e.what());
  }
  err << to_string(mode) << ": " << result.solutions.size() << " solution(s), " << result.cells_scanned
      << " cells, " << std::chrono::duration<double>(result.duration).count() << " s\n";
  if (result.unfactored_dropped) {
    err << "warning: " << result.unfactored_dropped << " solution(s) dropped: q unavailable within budget\n";
  }
  emit_report(out, result, c.format, c.precision_digits);
  return kOk;
}

inline int run_verify_corpus(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto entries = builtin_corpus();
  std::vector<VerificationReport> reports;
  Factorizer factorizer(c.budget);
  for (const auto& e : entries) {
    reports.push_back(verify_entry(e, factorizer));
    const auto& v = reports.back();
    if (v.k_printed_matches == Verdict::fail) err << e.name << ": inconsistent-k (printed k != B*y^n - A*x^n)\n";
    for (const auto& q : v.quantities) {
      if (!q.pass) err << e.name << ": " << q.expected.quantity << " outside tolerance\n";
    }
  }
  emit_corpus(out, entries, reports, c.format, c.precision_digits);
  return kOk;
}

}  // namespace detail

inline int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "analyze") return detail::run_analyze(c, out, err);
  if (c.command == "bounds") return detail::run_bounds(c, out, err);
  if (c.command == "search") return detail::run_search_command(c, SearchMode::fixed_k, out, err);
  if (c.command == "hunt") return detail::run_search_command(c, SearchMode::derived_k, out, err);
  if (c.command == "verify-corpus") return detail::run_verify_corpus(c, out, err);
  throw usage_error("unknown command '" + c.command + "'");
}

/// Parses `args` (without the program name) and runs the command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "json";
  std::optional<std::string> qmax;

  CLI::App app{"Gains, quality and bounds for solutions of B*y^n = A*x^n + k", "gainlab"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool with_qmax) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--precision", cfg.precision_digits, "Significant digits for reals")
        ->check(CLI::Range(1, 60));
    if (with_qmax) sub->add_option("--qmax", qmax, "Custom q_max for the power-gain bound");
  };

  using Flags = std::initializer_list<std::pair<const char*, std::string*>>;

  auto* analyze = app.add_subcommand("analyze", "Validate a solution and report its gains and bounds");
  for (auto [flag, dest] : Flags{{"--n", &cfg.n}, {"--x", &cfg.x}, {"--y", &cfg.y}, {"--A", &cfg.A},
                            {"--B", &cfg.B}, {"--k", &cfg.k}}) {
    analyze->add_option(flag, *dest)->required();
  }
  common(analyze, true);

  auto* bounds = app.add_subcommand("bounds", "Evaluate the structural and conjectural bounds");
  for (auto [flag, dest] : Flags{{"--n", &cfg.n}, {"--A", &cfg.A}, {"--B", &cfg.B}, {"--y", &cfg.y}}) {
    bounds->add_option(flag, *dest)->required();
  }
  common(bounds, true);

  auto* search = app.add_subcommand("search", "Enumerate solutions with k from a fixed range");
  auto* hunt = app.add_subcommand("hunt", "Enumerate solutions with k = B*y^n - A*x^n");
  for (auto* sub : {search, hunt}) {
    for (auto [flag, dest] : Flags{{"--n", &cfg.n_range}, {"--x", &cfg.x_range}, {"--y", &cfg.y_range},
                              {"--A", &cfg.A_range}, {"--B", &cfg.B_range}}) {
      sub->add_option(flag, *dest, "LO:HI")->required();
    }
    sub->add_flag("--allow-trivial-x", cfg.allow_trivial_x, "Admit x = 1");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
    common(sub, true);
  }
  search->add_option("--k", cfg.k_range, "LO:HI")->required();
  hunt->add_option("--q-threshold", cfg.q_threshold, "Keep only solutions with q >= threshold");

  auto* corpus = app.add_subcommand("verify-corpus", "Recompute the built-in case studies");
  common(corpus, false);

  std::vector<std::string> argv_store{"gainlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format == "csv" ? OutputFormat::csv : (format == "human" ? OutputFormat::human : OutputFormat::json);
    cfg.budget = budget_from_env();
    if (qmax) {
      try {
        cfg.qmax = QMax::custom(parse_real(*qmax));
      } catch (const undefined_input&) {
        throw usage_error("--qmax must be a positive real");
      }
    }
    return dispatch(cfg, out, err);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const budget_exceeded& e) {
    err << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const box_too_large& e) {
    err << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const undefined_input& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace gainlab::cli

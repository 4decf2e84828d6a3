#include "qtfunnel/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qtfunnel/errors.hpp"
#include "qtfunnel/problems.hpp"

namespace qtf {

namespace {

nlohmann::json to_json(const Vector& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

std::string format_vector(const Vector& v) {
  std::ostringstream os;
  os << std::setprecision(10) << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << (i ? ", " : "") << v(i);
  }
  os << ')';
  return os.str();
}

void apply_param(OuterConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ContractViolation("--param expects key=value, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ContractViolation("--param " + key + ": '" + text + "' is not a number");
  }
  cfg.set(key, value);
}

struct SolveOptions {
  std::string problem;
  std::optional<double> tol;
  std::optional<double> mu0;
  std::optional<int> max_outer;
  std::optional<int> max_inner;
  std::string trace_path;
  std::string report_path;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
};

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  OuterConfig cfg;
  LoadedProblem loaded;
  try {
    for (const std::string& p : opts.params) {
      apply_param(cfg, p);
    }
    if (opts.tol) cfg.eps_tol = *opts.tol;
    if (opts.mu0) cfg.mu0 = *opts.mu0;
    if (opts.max_outer) cfg.max_outer = *opts.max_outer;
    if (opts.max_inner) cfg.inner.max_inner = *opts.max_inner;
    cfg.validate();
    loaded = load_problem(opts.problem);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Vector x0 = loaded.x0;
  if (opts.seed) {
    std::mt19937_64 rng(*opts.seed);
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    for (Eigen::Index i = 0; i < x0.size(); ++i) {
      x0(i) *= 1.0 + jitter(rng);
    }
  }

  SolveReport report;
  try {
    report = solve(loaded.problem, x0, cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const std::string& w : report.warnings) {
    err << "warning: " << w << '\n';
  }

  if (!opts.trace_path.empty()) {
    std::ofstream trace(opts.trace_path, std::ios::binary);
    if (!trace) {
      err << "error: cannot write trace '" << opts.trace_path << "'\n";
      return kExitUsage;
    }
    report.trace.write_csv(trace);
  }
  if (!opts.report_path.empty()) {
    std::ofstream file(opts.report_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write report '" << opts.report_path << "'\n";
      return kExitUsage;
    }
    file << report_json(loaded.problem.name, cfg, report).dump(2) << '\n';
  }
  out << summary_line(report) << '\n';
  return exit_code(report.status);
}

int run_check(const std::string& name, int points, std::uint64_t seed,
              std::ostream& out, std::ostream& err) {
  LoadedProblem loaded;
  try {
    loaded = load_problem(name);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 3.0);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    Vector x(loaded.problem.n);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      x(i) = dist(rng);
    }
    try {
      worst = std::max(worst, check_derivatives(loaded.problem, x).max_error());
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitBreakdown;
    }
  }
  out << loaded.problem.name << ": max relative derivative error " << worst
      << (worst <= 1e-6 ? " (ok)" : " (FAILED)") << '\n';
  return worst <= 1e-6 ? 0 : 1;
}

}  // namespace

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kkt_converged:
      return kExitConverged;
    case SolveStatus::infeasible_stationary:
      return kExitInfeasible;
    case SolveStatus::iteration_limit:
      return kExitIterationLimit;
    case SolveStatus::numerical_breakdown:
      return kExitBreakdown;
  }
  return kExitBreakdown;
}

nlohmann::json report_json(const std::string& problem_name,
                           const OuterConfig& cfg, const SolveReport& report) {
  return {{"problem", problem_name},
          {"config", cfg.to_json()},
          {"status", std::string(to_string(report.status))},
          {"message", report.message},
          {"x", to_json(report.x)},
          {"lambda", to_json(report.lambda)},
          {"z", to_json(report.z)},
          {"f", report.f},
          {"h", report.h},
          {"E0", report.E0},
          {"outer_iterations", report.outer_iterations},
          {"inner_iterations", report.inner_iterations},
          {"mu_history", report.mu_history},
          {"warnings", report.warnings},
          {"wall_time_seconds", report.wall_time_seconds}};
}

std::string summary_line(const SolveReport& report) {
  std::ostringstream os;
  os << std::setprecision(10) << "status=" << to_string(report.status)
     << " f=" << report.f << " h=" << std::setprecision(3) << report.h
     << " E0=" << report.E0 << " outer=" << report.outer_iterations
     << " inner=" << report.inner_iterations << " x=" << format_vector(report.x);
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Interior point solver with quasi-tangential steps and a trust funnel",
               "qtfunnel"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a registry problem or JSON problem file");
  solve_cmd->add_option("problem", solve_opts.problem, "Registry name or path to a JSON file")
      ->required();
  solve_cmd->add_option("--tol", solve_opts.tol, "Final KKT tolerance (eps_tol)");
  solve_cmd->add_option("--mu0", solve_opts.mu0, "Initial barrier parameter");
  solve_cmd->add_option("--max-outer", solve_opts.max_outer, "Outer iteration cap");
  solve_cmd->add_option("--max-inner", solve_opts.max_inner, "Inner iteration cap per barrier problem");
  solve_cmd->add_option("--trace", solve_opts.trace_path, "Write the per-iteration trace as CSV");
  solve_cmd->add_option("--report", solve_opts.report_path, "Write a JSON run report");
  solve_cmd->add_option("--param", solve_opts.params, "Override a solver constant, key=value (repeatable)");
  solve_cmd->add_option("--seed", solve_opts.seed, "Randomly perturb the start point with this seed");

  CLI::App* list_cmd = app.add_subcommand("list", "List registry problems");

  std::string check_problem;
  int check_points = 20;
  std::uint64_t check_seed = 1;
  CLI::App* check_cmd = app.add_subcommand("check", "Finite-difference derivative check");
  check_cmd->add_option("problem", check_problem, "Registry name or path")->required();
  check_cmd->add_option("--points", check_points, "Number of random interior points");
  check_cmd->add_option("--seed", check_seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*list_cmd) {
    for (const RegistryEntry& e : registry()) {
      out << std::left << std::setw(22) << e.name << e.description << '\n';
    }
    out << "parameters:";
    for (const std::string& name : OuterConfig::parameter_names()) {
      out << ' ' << name;
    }
    out << '\n';
    return 0;
  }
  if (*check_cmd) {
    return run_check(check_problem, check_points, check_seed, out, err);
  }
  return run_solve(solve_opts, out, err);
}

}  // namespace qtf

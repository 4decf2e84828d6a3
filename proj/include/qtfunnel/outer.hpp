#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtfunnel/funnel.hpp"
#include "qtfunnel/trace.hpp"

namespace qtf {

/**
 * Outer-loop configuration. The barrier parameter follows
 *
 *   μ⁺ = max(ε_tol/10, min(mu_linear·μ, μ^mu_superlinear))
 *
 * and τ = max(tau_min, 1 − μ). The inner-solve constants live in `inner`.
 */
struct OuterConfig {
  double mu0 = 0.1;
  double eps_tol = 1e-8;
  double kappa_eps = 10.0;
  double mu_linear = 0.2;
  double mu_superlinear = 1.5;
  double tau_min = 0.995;
  int max_outer = 50;
  double s_max = 100.0;
  double kappa_sigma = 1e10;
  FunnelParameters inner;

  void validate() const;

  /// Sets a constant by name (e.g. "kappa1", "mu0", "max_inner"). Throws
  /// ContractViolation for unknown keys.
  void set(std::string_view key, double value);

  /// Names accepted by set().
  static std::vector<std::string> parameter_names();

  nlohmann::json to_json() const;
};

double update_mu(double mu, const OuterConfig& cfg);
double update_tau(double mu, double tau_min);

enum class SolveStatus {
  kkt_converged,
  infeasible_stationary,
  iteration_limit,
  numerical_breakdown,
};

std::string_view to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::numerical_breakdown;
  std::string message;
  Vector x;
  Vector lambda;
  Vector z;
  double f = 0.0;
  double h = 0.0;
  double E0 = 0.0;
  int outer_iterations = 0;
  int inner_iterations = 0;
  std::vector<double> mu_history;
  std::vector<std::string> warnings;
  double wall_time_seconds = 0.0;
  TraceLog trace;
};

/// Least-squares multipliers minimizing ‖∇f + ∇c λ − z‖.
Vector initial_multipliers(const Evaluation& eval, const Vector& z);

/**
 * Runs the barrier outer loop from x0. Components of x0 below 1e-8 are moved
 * to 1e-8 with a warning recorded in the report.
 */
SolveReport solve(const Problem& problem, const Vector& x0,
                  const OuterConfig& cfg, IterationObserver observer = {});

}  // namespace qtf

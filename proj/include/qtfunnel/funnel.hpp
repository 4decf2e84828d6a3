#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "qtfunnel/barrier.hpp"
#include "qtfunnel/model.hpp"
#include "qtfunnel/steps.hpp"
#include "qtfunnel/trace.hpp"

namespace qtf {

struct FunnelParameters {
  /// Armijo constant for both line searches.
  double rho = 1e-4;
  double kappa_h = 0.5;
  double kappa_h_bar = 0.9;
  int max_ls_halvings = 60;
  int max_inner = 500;
  StepParameters steps;

  void validate() const;
};

/// Largest α ∈ (0, 1] with x + αd >= (1 − τ)x.
double fraction_to_boundary(const Vector& x, const Vector& d, double tau);

struct LineSearchResult {
  bool accepted = false;
  double alpha = 0.0;
  int halvings = 0;
  Vector x;
  Evaluation eval;
};

/**
 * Backtracking for f-iterations: halves α from alpha_max until
 *   φ(x) − φ(x + αd) >= −ρ α ∇φᵀd   and   h(x + αd) <= h_max.
 */
LineSearchResult f_linesearch(const Problem& problem, const Iterate& iterate,
                              const Vector& d, double alpha_max, double mu,
                              double rho, int max_halvings = 60);

/**
 * Backtracking for h-iterations: halves α from alpha_max until
 *   h(x + αd) <= (1 − ρ) h + ρ ‖c + α ∇cᵀd‖.
 */
LineSearchResult h_linesearch(const Problem& problem, const Iterate& iterate,
                              const Vector& d, double alpha_max, double rho,
                              int max_halvings = 60);

double update_h_max(double h_max, double h_k, double h_next,
                    IterationClass iteration_class, double kappa_h,
                    double kappa_h_bar);

/// max(h₀, min(10, E₀)).
double init_h_max(double h0, double e0);

enum class InnerStatus {
  converged,
  infeasible_stationary,
  iteration_limit,
  numerical_breakdown,
};

std::string_view to_string(InnerStatus status);

/// Full state of one accepted inner step, handed to an observer before the
/// trace record is emitted.
struct IterationSnapshot {
  int outer_index = 0;
  int inner_index = 0;
  double mu = 0.0;
  double tau = 0.0;
  double kappa_sigma = 0.0;
  double rho = 0.0;
  Iterate before;
  Matrix w_tilde;
  Vector grad_phi;
  StepBundle step;
  Vector z_raw;
  double alpha_max = 0.0;
  double alpha = 0.0;
  int ls_halvings = 0;
  Iterate after;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

/// Mutable state shared across inner solves of one run.
struct InnerSession {
  int outer_index = 0;
  PenaltyState penalty;
  BfgsHessian bfgs;
  TraceLog* trace = nullptr;
  IterationObserver observer;
};

struct InnerResult {
  Iterate iterate;
  InnerStatus status = InnerStatus::converged;
  int iterations = 0;
  std::string message;
};

/**
 * Approximately solves the barrier problem at fixed μ until
 * E_μ <= κ_ε μ. Every failure is reported through the status; the function
 * does not throw for numerical trouble.
 */
InnerResult inner_solve(const Problem& problem, const Iterate& start,
                        const BarrierContext& ctx, const FunnelParameters& params,
                        InnerSession& session);

}  // namespace qtf

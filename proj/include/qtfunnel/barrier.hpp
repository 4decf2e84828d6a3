#pragma once

#include "qtfunnel/model.hpp"

namespace qtf {

/// Parameters governing one inner (fixed-μ) solve.
struct BarrierContext {
  double mu = 0.1;
  /// Fraction-to-the-boundary parameter τ ∈ (0, 1).
  double tau = 0.995;
  /// Inner stop test E_μ <= κ_ε μ.
  double kappa_eps = 10.0;
  /// Scaling cap for s_d, s_c.
  double s_max = 100.0;
  /// Width of the band the bound multipliers are reset into.
  double kappa_sigma = 1e10;

  void validate() const;
};

/// φ(x) = f − μ Σ ln xᵢ. Throws DomainError for nonpositive xᵢ.
double barrier_value(double f, const Vector& x, double mu);

/// ∇f − μ X⁻¹ e. Throws DomainError for nonpositive xᵢ.
Vector barrier_gradient(const Vector& grad_f, const Vector& x, double mu);

struct Scaling {
  double s_d = 1.0;
  double s_c = 1.0;
};

Scaling scaling_factors(const Vector& lambda, const Vector& z, double s_max);

/// The three scaled residuals entering E_μ.
struct OptimalityResiduals {
  double dual = 0.0;
  double complementarity = 0.0;
  double primal = 0.0;

  double max() const;
};

OptimalityResiduals optimality_residuals(const Iterate& iterate, double mu,
                                         double s_max);

/// Scaled optimality error of the barrier problem: the maximum of
/// ‖∇f + ∇c λ − z‖/s_d, ‖Xz − μe‖/s_c and ‖c‖.
double error_mu(const Iterate& iterate, const BarrierContext& ctx);

/// E_μ with μ = 0, measuring optimality for the original problem.
double error_zero(const Iterate& iterate, double s_max);

/// Dual estimate μX⁻¹e − X⁻¹Z d obtained by eliminating d_z from the
/// primal-dual Newton system. Components may be nonpositive.
Vector estimate_duals(const Vector& x, const Vector& z, const Vector& d,
                      double mu);

/// Clamps each zᵢ into [μ/(κ_σ xᵢ), κ_σ μ/xᵢ].
Vector reset_duals(const Vector& z_raw, const Vector& x_new, double mu,
                   double kappa_sigma);

}  // namespace qtf

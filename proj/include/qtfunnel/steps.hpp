#pragma once

#include <optional>
#include <string_view>

#include "qtfunnel/model.hpp"

namespace qtf {

/// Constants of the step computation. All are overridable from the CLI.
struct StepParameters {
  /// Exponent in the Levenberg-Marquardt damping η = ‖c‖^δ.
  double delta = 1.0;
  /// Switching condition −∇φᵀd >= σ₁ h^σ₂.
  double sigma1 = 1e-4;
  double sigma2 = 1.0;
  /// Linearized-feasibility allowances for f- and h-iterations.
  double kappa1 = 0.9;
  double kappa2 = 0.9;
  /// b₁ = b1_scale·(1 + ‖W‖_F).
  double b1_scale = 1e-8;
  double nu0 = 1.0;
  double kappa_nu = 0.1;
  double M_nu = 1e10;
  double nu_min_const = 1e-12;
  int max_nu_halvings = 200;

  void validate() const;
};

enum class IterationClass { f, h };

std::string_view to_string(IterationClass c);

/// Penalty factor ν and shift ζ carried by the ν-update loop.
struct PenaltyState {
  double nu = 1.0;
  double zeta = 0.0;
  double nu_min_value = 0.0;
  double b1 = 0.0;
};

struct StepBundle {
  Vector v;
  Vector t;
  /// v + t
  Vector d;
  /// (1/ν) ∇cᵀ t
  Vector lambda_next;
  IterationClass iteration_class = IterationClass::f;
  /// Smallest squared Cholesky pivot of the accepted tangential matrix.
  double min_pivot = 0.0;
  /// Certified lower bound on the smallest eigenvalue of that matrix.
  double curvature_floor = 0.0;
  double nu = 0.0;
  double zeta = 0.0;
  double b1 = 0.0;
  double nu_min_value = 0.0;
  int nu_halvings = 0;
  /// ‖c + ∇cᵀ v‖
  double lin_residual = 0.0;
};

/**
 * Normal step: Gauss-Newton minimum-norm step when ∇c has full column rank,
 * otherwise the Levenberg-Marquardt step with damping ‖c‖^δ. Returns zero
 * when c = 0 or m = 0.
 */
Vector normal_step(const Matrix& jac_c, const Vector& c, double delta);

/// W̃ = H + X⁻¹Z. Throws ContractViolation when H is not symmetric.
Matrix build_w_tilde(const Matrix& hessian, const Vector& x, const Vector& z);

/// W + (1/ν) ∇c∇cᵀ + ζ I, explicitly symmetrized.
Matrix tangential_matrix(const Matrix& w, const Matrix& jac_c, double nu,
                         double zeta);

struct TangentialSolution {
  Vector t;
  double min_pivot = 0.0;
  double curvature_floor = 0.0;
};

/**
 * Minimizes (∇φ + Wv)ᵀt + ½ tᵀ(W + (1/ν)∇c∇cᵀ + ζI) t. Returns std::nullopt
 * when the matrix is not positive definite.
 */
std::optional<TangentialSolution> quasi_tangential(const Matrix& w,
                                                   const Matrix& jac_c,
                                                   const Vector& grad_phi,
                                                   const Vector& v, double nu,
                                                   double zeta);

/**
 * Threshold below which ν is no longer halved on indefiniteness and the shift
 * ζ is activated instead.
 */
double nu_min(const Vector& grad_phi, const Matrix& w, const Vector& v,
              double zeta, double h, double h_max, double lin_residual,
              double b1, const StepParameters& params);

/// Smallest ζ = b₁·2ʲ for which M_base + ζI − b₁I is positive definite.
/// Throws NumericalBreakdown once ζ would exceed 1e12.
double zeta_repair(const Matrix& m_base, double b1);

/// f iff −∇φᵀ(v + t) >= σ₁ h^σ₂.
IterationClass classify_iteration(const Vector& grad_phi, const Vector& v,
                                  const Vector& t, double h, double sigma1,
                                  double sigma2);

/// Inputs to the ν-update loop at the current iterate.
struct TangentialContext {
  const Matrix& w;
  const Matrix& jac_c;
  const Vector& c;
  const Vector& grad_phi;
  const Vector& v;
  double h = 0.0;
  double h_max = 0.0;
};

/**
 * Runs the ν-update loop: starting from state.nu with ζ = 0, halves ν (or
 * activates ζ once ν falls below ν_min on an indefinite matrix) until the
 * tangential step satisfies one of the admissible condition pairs. Updates
 * state in place. Throws NumericalBreakdown after max_nu_halvings halvings.
 */
StepBundle update_nu(PenaltyState& state, const TangentialContext& ctx,
                     const StepParameters& params);

}  // namespace qtf

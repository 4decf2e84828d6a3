#pragma once

#include "qtfunnel/model.hpp"

namespace qtf {

enum class Definiteness { positive_definite, indefinite };

struct FactorizationResult {
  Definiteness status = Definiteness::indefinite;
  /// Lower Cholesky factor of M − floor·I (only when positive definite).
  Matrix factor;
  /// Smallest squared diagonal entry of the factor.
  double min_pivot = 0.0;

  bool positive_definite() const {
    return status == Definiteness::positive_definite;
  }
};

/// Symmetry gate shared by the kernels: |Mᵢⱼ − Mⱼᵢ| <= 1e-12·max(1, |Mᵢⱼ|, |Mⱼᵢ|).
bool is_symmetric(const Matrix& m);

/// Positive-definiteness test of M − floor·I by attempting a Cholesky
/// factorization. Throws ContractViolation for asymmetric input.
FactorizationResult cholesky_probe(const Matrix& m, double floor = 0.0);

/// Solves M y = rhs for symmetric positive definite M. Throws
/// FactorizationError when M is not positive definite.
Vector solve_spd(const Matrix& m, const Vector& rhs);

/// Solves with an existing floor-0 factor from cholesky_probe.
Vector solve_spd(const FactorizationResult& factor, const Vector& rhs);

/**
 * Lower bound on λ_min(M) certified by the factor: λ_min = 1/‖L⁻¹‖₂² and
 * ‖L⁻¹‖₂ <= ‖L⁻¹‖_F.
 */
double certified_min_eigenvalue(const FactorizationResult& factor);

/// Levenberg-Marquardt system (J Jᵀ + η I) v = −J c for the n×m Jacobian J.
Vector ridge_normal_solve(const Matrix& jac, const Vector& c, double eta);

/// Minimum-norm solution v = −J (JᵀJ)⁻¹ c of Jᵀ v = −c. Throws RankError when
/// J does not have full column rank.
Vector min_norm_least_squares(const Matrix& jac, const Vector& c);

/// Count of singular values above 1e-10·max(n, m)·σ_max.
int rank_estimate(const Matrix& jac);

}  // namespace qtf

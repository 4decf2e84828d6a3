#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace qtf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/**
 * Nonlinear program in standard form
 *
 *   min f(x)  s.t.  c(x) = 0,  x >= 0
 *
 * with f : Rⁿ → R and c : Rⁿ → Rᵐ. The constraint Jacobian is stored as the
 * n×m matrix ∇c(x) whose columns are the constraint gradients.
 */
struct Problem {
  std::string name;
  int n = 0;
  int m = 0;

  std::function<double(const Vector&)> objective;
  /// May be left empty when m == 0.
  std::function<Vector(const Vector&)> constraints;
  std::function<Vector(const Vector&)> objective_gradient;
  /// May be left empty when m == 0.
  std::function<Matrix(const Vector&)> constraint_jacobian;
  /// ∇²f(x) + Σ λᵢ ∇²cᵢ(x). Optional; a quasi-Newton model is used when empty.
  std::function<Matrix(const Vector&, const Vector&)> lagrangian_hessian;

  bool has_hessian() const { return static_cast<bool>(lagrangian_hessian); }

  /// Throws ContractViolation if dimensions or required callbacks are missing.
  void validate() const;
};

/// All first-order information at one point.
struct Evaluation {
  double f = 0.0;
  Vector c;
  Vector grad_f;
  Matrix jac_c;
  /// ‖c(x)‖₂
  double h = 0.0;
};

/// Primal-dual state (x, λ, z) with cached evaluations and the funnel radius.
struct Iterate {
  Vector x;
  Vector lambda;
  Vector z;
  Evaluation eval;
  double h_max = 0.0;
};

/// Evaluates f, c, ∇f, ∇c and h at x. Positivity of x is the caller's
/// business. Throws EvaluationError naming the first non-finite quantity.
Evaluation evaluate(const Problem& problem, const Vector& x);

/// Evaluates the Lagrangian Hessian and checks finiteness and symmetry.
Matrix evaluate_hessian(const Problem& problem, const Vector& x,
                        const Vector& lambda);

/**
 * Problem with general inequalities g(x) <= 0 and optionally free variables.
 * Variables not marked free carry the bound x >= 0.
 */
struct GeneralProblem {
  std::string name;
  int n = 0;
  std::function<double(const Vector&)> objective;
  std::function<Vector(const Vector&)> objective_gradient;

  int equality_count = 0;
  std::function<Vector(const Vector&)> equalities;
  std::function<Matrix(const Vector&)> equality_jacobian;

  int inequality_count = 0;
  std::function<Vector(const Vector&)> inequalities;
  std::function<Matrix(const Vector&)> inequality_jacobian;

  /// Size n, or empty for "no free variables".
  std::vector<bool> free_variables;

  /// ∇²f + Σ λₑ ∇²eᵢ + Σ λ_g ∇²gᵢ, optional.
  std::function<Matrix(const Vector&, const Vector&, const Vector&)>
      lagrangian_hessian;
};

/**
 * Index bookkeeping for slack_reformulate. The reformulated variable vector is
 *
 *   y = [ x⁺ (n entries) | x⁻ (one per free variable) | s (one per inequality) ]
 *
 * and the original point is x = x⁺ − E x⁻ where E scatters x⁻ into the free
 * positions.
 */
struct SlackLayout {
  int original_n = 0;
  std::vector<int> free_indices;
  int slack_offset = 0;
  int slack_count = 0;
  int equality_count = 0;

  int reformulated_n() const {
    return original_n + static_cast<int>(free_indices.size()) + slack_count;
  }

  /// Maps a reformulated point back to the original variables.
  Vector recover(const Vector& y) const;
  /// Embeds an original point; free variables are split into positive and
  /// negative parts and each slack is set to −gᵢ(x).
  Vector lift(const Vector& x, const Vector& g) const;
};

struct Reformulation {
  Problem problem;
  SlackLayout layout;
};

/// Rewrites inequalities as gᵢ(x) + sᵢ = 0 with sᵢ >= 0 and splits free
/// variables, producing a Problem in standard form.
Reformulation slack_reformulate(const GeneralProblem& general);

struct DerivativeReport {
  double gradient_error = 0.0;
  double jacobian_error = 0.0;
  /// Only filled when the problem supplies a Lagrangian Hessian.
  std::optional<double> hessian_error;

  double max_error() const;
};

/// Default relative central-difference step.
inline constexpr double kDefaultDifferenceStep = 1e-6;

/**
 * Compares analytic derivatives against central differences with per
 * component step step·max(1, |xᵢ|). Errors are |analytic − fd| scaled by
 * max(1, |analytic|), maximized over entries. The Hessian (when present) is
 * checked against differences of ∇f + ∇c λ at λ = e.
 */
DerivativeReport check_derivatives(const Problem& problem, const Vector& x,
                                   double step = kDefaultDifferenceStep);

/**
 * Quasi-Newton model of the Lagrangian Hessian, used when the problem has no
 * analytic Hessian. Powell-damped BFGS; the model resets to the identity when
 * the curvature sᵀy falls below 1e-8·‖s‖‖y‖.
 */
class BfgsHessian {
 public:
  explicit BfgsHessian(int n = 0) : b_(Matrix::Identity(n, n)) {}

  const Matrix& matrix() const { return b_; }
  void reset() { b_.setIdentity(); }
  /// Returns false when the pair was rejected and the model reset.
  bool update(const Vector& s, const Vector& y);

 private:
  Matrix b_;
};

}  // namespace qtf

#include "qtfunnel/model.hpp"

#include <algorithm>
#include <cmath>

#include "qtfunnel/errors.hpp"

namespace qtf {

namespace {

void require_finite(const Eigen::Ref<const Matrix>& values, const char* what) {
  if (!values.allFinite()) {
    throw EvaluationError(what);
  }
}

void require_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                   const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ContractViolation(std::string(what) + " has shape " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

// Linear map y -> x for the split of free variables.
Vector scatter_back(const SlackLayout& layout, const Vector& y) {
  Vector x = y.head(layout.original_n);
  for (std::size_t j = 0; j < layout.free_indices.size(); ++j) {
    x(layout.free_indices[j]) -= y(layout.original_n + static_cast<int>(j));
  }
  return x;
}

// Pulls an x-space gradient (or Jacobian rows) back to y-space: Pᵀ g.
Matrix pull_back_rows(const SlackLayout& layout, const Matrix& gx) {
  const int ny = layout.reformulated_n();
  Matrix gy = Matrix::Zero(ny, gx.cols());
  gy.topRows(layout.original_n) = gx;
  for (std::size_t j = 0; j < layout.free_indices.size(); ++j) {
    gy.row(layout.original_n + static_cast<int>(j)) =
        -gx.row(layout.free_indices[j]);
  }
  return gy;
}

}  // namespace

void Problem::validate() const {
  if (n <= 0) {
    throw ContractViolation("problem '" + name + "': n must be positive");
  }
  if (m < 0 || m > n) {
    throw ContractViolation("problem '" + name + "': need 0 <= m <= n");
  }
  if (!objective || !objective_gradient) {
    throw ContractViolation("problem '" + name +
                            "': objective callbacks are required");
  }
  if (m > 0 && (!constraints || !constraint_jacobian)) {
    throw ContractViolation("problem '" + name +
                            "': constraint callbacks are required when m > 0");
  }
}

Evaluation evaluate(const Problem& problem, const Vector& x) {
  if (x.size() != problem.n) {
    throw ContractViolation("evaluate: x has wrong dimension");
  }
  Evaluation e;
  e.f = problem.objective(x);
  if (!std::isfinite(e.f)) {
    throw EvaluationError("objective");
  }
  e.grad_f = problem.objective_gradient(x);
  require_shape(e.grad_f, problem.n, 1, "objective_gradient");
  require_finite(e.grad_f, "objective_gradient");

  if (problem.m > 0) {
    e.c = problem.constraints(x);
    require_shape(e.c, problem.m, 1, "constraints");
    require_finite(e.c, "constraints");
    e.jac_c = problem.constraint_jacobian(x);
    require_shape(e.jac_c, problem.n, problem.m, "constraint_jacobian");
    require_finite(e.jac_c, "constraint_jacobian");
  } else {
    e.c = Vector::Zero(0);
    e.jac_c = Matrix::Zero(problem.n, 0);
  }
  e.h = e.c.norm();
  return e;
}

Matrix evaluate_hessian(const Problem& problem, const Vector& x,
                        const Vector& lambda) {
  if (!problem.lagrangian_hessian) {
    throw ContractViolation("problem '" + problem.name + "' has no Hessian");
  }
  Matrix hess = problem.lagrangian_hessian(x, lambda);
  require_shape(hess, problem.n, problem.n, "lagrangian_hessian");
  require_finite(hess, "lagrangian_hessian");
  for (int i = 0; i < problem.n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double scale =
          std::max({1.0, std::abs(hess(i, j)), std::abs(hess(j, i))});
      if (std::abs(hess(i, j) - hess(j, i)) > 1e-12 * scale) {
        throw ContractViolation("lagrangian_hessian is not symmetric");
      }
    }
  }
  return hess;
}

Vector SlackLayout::recover(const Vector& y) const {
  if (y.size() != reformulated_n()) {
    throw ContractViolation("SlackLayout::recover: wrong dimension");
  }
  return scatter_back(*this, y);
}

Vector SlackLayout::lift(const Vector& x, const Vector& g) const {
  if (x.size() != original_n || g.size() != slack_count) {
    throw ContractViolation("SlackLayout::lift: wrong dimension");
  }
  Vector y = Vector::Zero(reformulated_n());
  y.head(original_n) = x;
  for (std::size_t j = 0; j < free_indices.size(); ++j) {
    const double xi = x(free_indices[j]);
    y(free_indices[j]) = std::max(xi, 0.0);
    y(original_n + static_cast<int>(j)) = std::max(-xi, 0.0);
  }
  y.segment(slack_offset, slack_count) = -g;
  return y;
}

Reformulation slack_reformulate(const GeneralProblem& general) {
  if (general.n <= 0) {
    throw ContractViolation("slack_reformulate: n must be positive");
  }
  if (!general.free_variables.empty() &&
      static_cast<int>(general.free_variables.size()) != general.n) {
    throw ContractViolation("slack_reformulate: free_variables has wrong size");
  }

  SlackLayout layout;
  layout.original_n = general.n;
  for (int i = 0; i < static_cast<int>(general.free_variables.size()); ++i) {
    if (general.free_variables[i]) {
      layout.free_indices.push_back(i);
    }
  }
  layout.slack_offset =
      general.n + static_cast<int>(layout.free_indices.size());
  layout.slack_count = general.inequality_count;
  layout.equality_count = general.equality_count;

  Reformulation out;
  out.layout = layout;
  Problem& p = out.problem;
  p.name = general.name;
  p.n = layout.reformulated_n();
  p.m = general.equality_count + general.inequality_count;

  const bool identity = layout.free_indices.empty() && layout.slack_count == 0;
  if (identity) {
    p.objective = general.objective;
    p.objective_gradient = general.objective_gradient;
    p.constraints = general.equalities;
    p.constraint_jacobian = general.equality_jacobian;
    if (general.lagrangian_hessian) {
      auto hess = general.lagrangian_hessian;
      p.lagrangian_hessian = [hess](const Vector& x, const Vector& lambda) {
        return hess(x, lambda, Vector::Zero(0));
      };
    }
    p.validate();
    return out;
  }

  p.objective = [general, layout](const Vector& y) {
    return general.objective(scatter_back(layout, y));
  };
  p.objective_gradient = [general, layout](const Vector& y) -> Vector {
    return pull_back_rows(layout, general.objective_gradient(scatter_back(layout, y)));
  };
  p.constraints = [general, layout](const Vector& y) {
    const Vector x = scatter_back(layout, y);
    Vector c(layout.equality_count + layout.slack_count);
    if (layout.equality_count > 0) {
      c.head(layout.equality_count) = general.equalities(x);
    }
    if (layout.slack_count > 0) {
      c.tail(layout.slack_count) =
          general.inequalities(x) + y.segment(layout.slack_offset, layout.slack_count);
    }
    return c;
  };
  p.constraint_jacobian = [general, layout](const Vector& y) {
    const Vector x = scatter_back(layout, y);
    Matrix jac = Matrix::Zero(layout.reformulated_n(),
                              layout.equality_count + layout.slack_count);
    if (layout.equality_count > 0) {
      jac.leftCols(layout.equality_count) =
          pull_back_rows(layout, general.equality_jacobian(x));
    }
    if (layout.slack_count > 0) {
      jac.rightCols(layout.slack_count) =
          pull_back_rows(layout, general.inequality_jacobian(x));
      jac.block(layout.slack_offset, layout.equality_count, layout.slack_count,
                layout.slack_count)
          .setIdentity();
    }
    return jac;
  };
  if (general.lagrangian_hessian) {
    p.lagrangian_hessian = [general, layout](const Vector& y,
                                             const Vector& lambda) {
      const Vector x = scatter_back(layout, y);
      const Matrix hx =
          general.lagrangian_hessian(x, lambda.head(layout.equality_count),
                                     lambda.tail(layout.slack_count));
      // Pᵀ H P with P the linear map y -> x.
      const Matrix left = pull_back_rows(layout, hx);
      Matrix hy = pull_back_rows(layout, left.transpose());
      return Matrix(0.5 * (hy + hy.transpose()));
    };
  }
  p.validate();
  return out;
}

double DerivativeReport::max_error() const {
  return std::max({gradient_error, jacobian_error, hessian_error.value_or(0.0)});
}

DerivativeReport check_derivatives(const Problem& problem, const Vector& x,
                                   double step) {
  if (!(step > 0.0 && step <= 1e-3)) {
    throw ContractViolation("check_derivatives: step must lie in (0, 1e-3]");
  }
  if ((x.array() <= 0.0).any()) {
    throw ContractViolation("check_derivatives: x must be strictly positive");
  }
  const int n = problem.n;
  const int m = problem.m;
  const Evaluation base = evaluate(problem, x);
  const Vector ones = Vector::Ones(m);
  const auto lagrangian_gradient = [&](const Evaluation& e) -> Vector {
    return m > 0 ? Vector(e.grad_f + e.jac_c * ones) : e.grad_f;
  };

  Vector fd_grad(n);
  Matrix fd_jac(n, m);
  Matrix fd_hess(n, n);
  for (int i = 0; i < n; ++i) {
    const double hi = step * std::max(1.0, std::abs(x(i)));
    Vector xp = x;
    Vector xm = x;
    xp(i) += hi;
    xm(i) -= hi;
    const Evaluation ep = evaluate(problem, xp);
    const Evaluation em = evaluate(problem, xm);
    fd_grad(i) = (ep.f - em.f) / (2.0 * hi);
    if (m > 0) {
      fd_jac.row(i) = ((ep.c - em.c) / (2.0 * hi)).transpose();
    }
    if (problem.has_hessian()) {
      fd_hess.col(i) = (lagrangian_gradient(ep) - lagrangian_gradient(em)) / (2.0 * hi);
    }
  }

  const auto relative = [](const Matrix& analytic, const Matrix& approx) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < analytic.size(); ++k) {
      const double a = analytic.data()[k];
      worst = std::max(worst, std::abs(a - approx.data()[k]) / std::max(1.0, std::abs(a)));
    }
    return worst;
  };

  DerivativeReport report;
  report.gradient_error = relative(base.grad_f, fd_grad);
  if (m > 0) {
    report.jacobian_error = relative(base.jac_c, fd_jac);
  }
  if (problem.has_hessian()) {
    report.hessian_error = relative(evaluate_hessian(problem, x, ones), fd_hess);
  }
  return report;
}

bool BfgsHessian::update(const Vector& s, const Vector& y) {
  const double sy = s.dot(y);
  if (!(sy > 1e-8 * s.norm() * y.norm())) {
    reset();
    return false;
  }
  const Vector bs = b_ * s;
  const double sbs = s.dot(bs);
  // Powell damping keeps the update positive definite.
  Vector r = y;
  double sr = sy;
  if (sy < 0.2 * sbs) {
    const double theta = 0.8 * sbs / (sbs - sy);
    r = theta * y + (1.0 - theta) * bs;
    sr = s.dot(r);
  }
  b_ += r * r.transpose() / sr - bs * bs.transpose() / sbs;
  b_ = (0.5 * (b_ + b_.transpose())).eval();
  return true;
}

}  // namespace qtf

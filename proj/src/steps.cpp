#include "qtfunnel/steps.hpp"

#include <algorithm>
#include <cmath>

#include "qtfunnel/errors.hpp"
#include "qtfunnel/linalg.hpp"

namespace qtf {

void StepParameters::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw ContractViolation(std::string("StepParameters: ") + what);
    }
  };
  require(delta > 0.0 && delta <= 2.0, "delta must lie in (0, 2]");
  require(sigma1 > 0.0 && sigma2 > 0.0, "sigma1, sigma2 must be positive");
  require(kappa1 > 0.0 && kappa1 < 1.0, "kappa1 must lie in (0, 1)");
  require(kappa2 > 0.0 && kappa2 < 1.0, "kappa2 must lie in (0, 1)");
  require(b1_scale > 0.0, "b1_scale must be positive");
  require(nu0 > 0.0, "nu0 must be positive");
  require(kappa_nu > 0.0, "kappa_nu must be positive");
  require(M_nu > 0.0, "M_nu must be positive");
  require(nu_min_const > 0.0 && nu_min_const < 1.0,
          "nu_min_const must lie in (0, 1)");
  require(max_nu_halvings > 0, "max_nu_halvings must be positive");
}

std::string_view to_string(IterationClass c) {
  return c == IterationClass::f ? "f" : "h";
}

Vector normal_step(const Matrix& jac_c, const Vector& c, double delta) {
  const Eigen::Index n = jac_c.rows();
  const Eigen::Index m = jac_c.cols();
  if (c.size() != m) {
    throw ContractViolation("normal_step: dimension mismatch");
  }
  const double h = c.norm();
  if (m == 0 || h == 0.0) {
    return Vector::Zero(n);
  }
  if (rank_estimate(jac_c) < m) {
    return ridge_normal_solve(jac_c, c, std::pow(h, delta));
  }
  return min_norm_least_squares(jac_c, c);
}

Matrix build_w_tilde(const Matrix& hessian, const Vector& x, const Vector& z) {
  if (!is_symmetric(hessian)) {
    throw ContractViolation("build_w_tilde: Hessian is not symmetric");
  }
  if (hessian.rows() != x.size() || z.size() != x.size()) {
    throw ContractViolation("build_w_tilde: dimension mismatch");
  }
  if (!(x.array() > 0.0).all() || !(z.array() > 0.0).all()) {
    throw ContractViolation("build_w_tilde: x and z must be strictly positive");
  }
  Matrix w = 0.5 * (hessian + hessian.transpose());
  w.diagonal().array() += z.array() / x.array();
  return w;
}

Matrix tangential_matrix(const Matrix& w, const Matrix& jac_c, double nu,
                         double zeta) {
  Matrix m = w;
  if (jac_c.cols() > 0) {
    m.noalias() += (1.0 / nu) * (jac_c * jac_c.transpose());
  }
  m = (0.5 * (m + m.transpose())).eval();
  m.diagonal().array() += zeta;
  return m;
}

std::optional<TangentialSolution> quasi_tangential(const Matrix& w,
                                                   const Matrix& jac_c,
                                                   const Vector& grad_phi,
                                                   const Vector& v, double nu,
                                                   double zeta) {
  if (!(nu > 0.0) || zeta < 0.0) {
    throw ContractViolation("quasi_tangential: need nu > 0 and zeta >= 0");
  }
  const Matrix m = tangential_matrix(w, jac_c, nu, zeta);
  const FactorizationResult factor = cholesky_probe(m, 0.0);
  if (!factor.positive_definite()) {
    return std::nullopt;
  }
  const Vector rhs = -(grad_phi + w * v);
  TangentialSolution sol;
  sol.t = solve_spd(factor, rhs);
  sol.t += solve_spd(factor, Vector(rhs - m * sol.t));
  sol.min_pivot = factor.min_pivot;
  sol.curvature_floor = certified_min_eigenvalue(factor);
  return sol;
}

double nu_min(const Vector& grad_phi, const Matrix& w, const Vector& v,
              double zeta, double h, double h_max, double lin_residual,
              double b1, const StepParameters& params) {
  Matrix shifted = w;
  shifted.diagonal().array() += zeta;
  const double model_gradient = (grad_phi + w * v).squaredNorm();
  const double denominator =
      std::min(params.M_nu, (model_gradient + 1.0) *
                                (1.0 + 2.0 * params.nu0 / b1 * shifted.norm()));
  double numerator = 0.0;
  if (v.norm() > 0.0) {
    numerator = params.kappa_nu * std::min(params.kappa1 * (h_max - lin_residual),
                                           params.kappa2 * (h - lin_residual));
  } else {
    // The v = 0 branch is bounded with the funnel radius; with h_k in its place
    // the threshold vanishes at every feasible point.
    numerator = params.kappa_nu * params.kappa1 * h_max;
  }
  const double candidate = std::max(0.0, numerator / denominator);
  return std::min(params.nu_min_const, candidate);
}

double zeta_repair(const Matrix& m_base, double b1) {
  if (!(b1 > 0.0)) {
    throw ContractViolation("zeta_repair: b1 must be positive");
  }
  Matrix shifted = m_base;
  for (double zeta = b1; zeta <= 1e12; zeta *= 2.0) {
    shifted.diagonal() = m_base.diagonal().array() + zeta;
    if (cholesky_probe(shifted, b1).positive_definite()) {
      return zeta;
    }
  }
  throw NumericalBreakdown("zeta_repair: shift exceeded 1e12");
}

IterationClass classify_iteration(const Vector& grad_phi, const Vector& v,
                                  const Vector& t, double h, double sigma1,
                                  double sigma2) {
  const double decrease = -grad_phi.dot(v + t);
  return decrease >= sigma1 * std::pow(h, sigma2) ? IterationClass::f
                                                  : IterationClass::h;
}

StepBundle update_nu(PenaltyState& state, const TangentialContext& ctx,
                     const StepParameters& params) {
  const Matrix& w = ctx.w;
  const Matrix& jac = ctx.jac_c;
  const double b1 = params.b1_scale * (1.0 + w.norm());
  const double lin_residual =
      jac.cols() > 0 ? (ctx.c + jac.transpose() * ctx.v).norm() : 0.0;

  state.zeta = 0.0;
  state.b1 = b1;
  state.nu_min_value =
      nu_min(ctx.grad_phi, w, ctx.v, 0.0, ctx.h, ctx.h_max, lin_residual, b1, params);

  int halvings = 0;
  const auto halve = [&] {
    if (halvings >= params.max_nu_halvings) {
      throw NumericalBreakdown("update_nu: nu halving cap reached");
    }
    state.nu *= 0.5;
    ++halvings;
  };

  while (true) {
    std::optional<TangentialSolution> sol = quasi_tangential(
        w, jac, ctx.grad_phi, ctx.v, state.nu, state.zeta);
    if (!sol) {
      state.nu_min_value = nu_min(ctx.grad_phi, w, ctx.v, state.zeta, ctx.h,
                                  ctx.h_max, lin_residual, b1, params);
      if (state.nu < state.nu_min_value) {
        const Matrix m_base = tangential_matrix(w, jac, state.nu, 0.0);
        state.zeta = zeta_repair(m_base, b1);
        sol = quasi_tangential(w, jac, ctx.grad_phi, ctx.v, state.nu,
                               state.zeta);
      }
      if (!sol) {
        halve();
        continue;
      }
    }

    const IterationClass cls = classify_iteration(
        ctx.grad_phi, ctx.v, sol->t, ctx.h, params.sigma1, params.sigma2);
    const double coupling =
        jac.cols() > 0 ? (jac.transpose() * sol->t).norm() : 0.0;
    const bool admissible =
        cls == IterationClass::f
            ? coupling <= params.kappa1 * (ctx.h_max - lin_residual)
            : coupling <= params.kappa2 * (ctx.h - lin_residual);
    if (!admissible) {
      halve();
      continue;
    }

    StepBundle bundle;
    bundle.v = ctx.v;
    bundle.t = std::move(sol->t);
    bundle.d = bundle.v + bundle.t;
    bundle.lambda_next = jac.transpose() * bundle.t / state.nu;
    bundle.iteration_class = cls;
    bundle.min_pivot = sol->min_pivot;
    bundle.curvature_floor = sol->curvature_floor;
    bundle.nu = state.nu;
    bundle.zeta = state.zeta;
    bundle.b1 = b1;
    bundle.nu_min_value = state.nu_min_value;
    bundle.nu_halvings = halvings;
    bundle.lin_residual = lin_residual;
    return bundle;
  }
}

}  // namespace qtf

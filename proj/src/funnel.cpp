#include "qtfunnel/funnel.hpp"

#include <algorithm>
#include <cmath>

#include "qtfunnel/errors.hpp"

namespace qtf {

namespace {

// Evaluates a trial point; non-finite callbacks count as a rejected trial.
// The barrier is undefined off the open orthant, so f trials must stay inside
// it. h trials only need c; the caller's fraction-to-boundary cap already keeps
// them interior.
bool try_evaluate(const Problem& problem, const Vector& x, Evaluation& out,
                  bool require_interior = true) {
  if (require_interior && !(x.array() > 0.0).all()) {
    return false;
  }
  try {
    out = evaluate(problem, x);
    return true;
  } catch (const EvaluationError&) {
    return false;
  }
}

Vector lagrangian_gradient(const Evaluation& e, const Vector& lambda) {
  if (lambda.size() == 0) {
    return e.grad_f;
  }
  return e.grad_f + e.jac_c * lambda;
}

}  // namespace

void FunnelParameters::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ContractViolation("FunnelParameters: rho must lie in (0, 1)");
  }
  if (!(kappa_h > 0.0 && kappa_h < 1.0) ||
      !(kappa_h_bar > 0.0 && kappa_h_bar < 1.0)) {
    throw ContractViolation("FunnelParameters: kappa_h, kappa_h_bar must lie in (0, 1)");
  }
  if (max_ls_halvings <= 0 || max_inner <= 0) {
    throw ContractViolation("FunnelParameters: iteration caps must be positive");
  }
  steps.validate();
}

double fraction_to_boundary(const Vector& x, const Vector& d, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ContractViolation("fraction_to_boundary: tau must lie in (0, 1)");
  }
  if (x.size() != d.size()) {
    throw ContractViolation("fraction_to_boundary: dimension mismatch");
  }
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (d(i) < 0.0) {
      alpha = std::min(alpha, -tau * x(i) / d(i));
    }
  }
  return alpha;
}

LineSearchResult f_linesearch(const Problem& problem, const Iterate& iterate,
                              const Vector& d, double alpha_max, double mu,
                              double rho, int max_halvings) {
  const Vector& x = iterate.x;
  const double phi = barrier_value(iterate.eval.f, x, mu);
  const double slope = barrier_gradient(iterate.eval.grad_f, x, mu).dot(d);

  LineSearchResult result;
  double alpha = alpha_max;
  for (int halvings = 0; halvings <= max_halvings; ++halvings, alpha *= 0.5) {
    const Vector trial = x + alpha * d;
    Evaluation e;
    if (!try_evaluate(problem, trial, e)) {
      continue;
    }
    const double phi_trial = barrier_value(e.f, trial, mu);
    if (phi - phi_trial >= -rho * alpha * slope && e.h <= iterate.h_max) {
      result.accepted = true;
      result.alpha = alpha;
      result.halvings = halvings;
      result.x = trial;
      result.eval = std::move(e);
      return result;
    }
  }
  result.halvings = max_halvings;
  return result;
}

LineSearchResult h_linesearch(const Problem& problem, const Iterate& iterate,
                              const Vector& d, double alpha_max, double rho,
                              int max_halvings) {
  const Vector& x = iterate.x;
  const Evaluation& e0 = iterate.eval;
  const Vector jd = problem.m > 0 ? Vector(e0.jac_c.transpose() * d) : Vector();

  LineSearchResult result;
  double alpha = alpha_max;
  for (int halvings = 0; halvings <= max_halvings; ++halvings, alpha *= 0.5) {
    const Vector trial = x + alpha * d;
    Evaluation e;
    if (!try_evaluate(problem, trial, e, false)) {
      continue;
    }
    const double linear = problem.m > 0 ? (e0.c + alpha * jd).norm() : 0.0;
    if (e.h <= (1.0 - rho) * e0.h + rho * linear) {
      result.accepted = true;
      result.alpha = alpha;
      result.halvings = halvings;
      result.x = trial;
      result.eval = std::move(e);
      return result;
    }
  }
  result.halvings = max_halvings;
  return result;
}

double update_h_max(double h_max, double h_k, double h_next,
                    IterationClass iteration_class, double kappa_h,
                    double kappa_h_bar) {
  if (iteration_class == IterationClass::f) {
    return h_max;
  }
  const double blended = kappa_h_bar * h_k + (1.0 - kappa_h_bar) * h_next;
  return std::min(h_max, std::max(kappa_h * h_max, blended));
}

double init_h_max(double h0, double e0) {
  return std::max(h0, std::min(10.0, e0));
}

std::string_view to_string(InnerStatus status) {
  switch (status) {
    case InnerStatus::converged:
      return "converged";
    case InnerStatus::infeasible_stationary:
      return "infeasible-stationary";
    case InnerStatus::iteration_limit:
      return "iteration-limit";
    case InnerStatus::numerical_breakdown:
      return "numerical-breakdown";
  }
  return "unknown";
}

InnerResult inner_solve(const Problem& problem, const Iterate& start,
                        const BarrierContext& ctx, const FunnelParameters& params,
                        InnerSession& session) {
  InnerResult result;
  Iterate& it = result.iterate;
  it = start;

  const auto fail = [&](InnerStatus status, std::string message) {
    result.status = status;
    result.message = std::move(message);
    return result;
  };

  try {
    it.eval = evaluate(problem, it.x);
  } catch (const EvaluationError& e) {
    return fail(InnerStatus::numerical_breakdown, e.what());
  }
  session.penalty.nu = params.steps.nu0;
  it.h_max = init_h_max(it.eval.h, error_mu(it, ctx));
  const double tolerance = ctx.kappa_eps * ctx.mu;

  for (int k = 0;; ++k) {
    const double e_mu = error_mu(it, ctx);
    if (e_mu <= tolerance) {
      result.status = InnerStatus::converged;
      return result;
    }
    if (k >= params.max_inner) {
      return fail(InnerStatus::iteration_limit, "inner iteration limit reached");
    }

    const Evaluation& e = it.eval;
    const Vector v = normal_step(e.jac_c, e.c, params.steps.delta);
    if (v.norm() <= 1e-12 * std::max(1.0, it.x.norm()) && e.h > 1e-8) {
      return fail(InnerStatus::infeasible_stationary,
                  "stationary point of the infeasibility measure");
    }

    IterationSnapshot snap;
    StepBundle step;
    try {
      const Matrix hessian = problem.has_hessian()
                                 ? evaluate_hessian(problem, it.x, it.lambda)
                                 : session.bfgs.matrix();
      snap.w_tilde = build_w_tilde(hessian, it.x, it.z);
      snap.grad_phi = barrier_gradient(e.grad_f, it.x, ctx.mu);
      const TangentialContext tctx{snap.w_tilde, e.jac_c, e.c, snap.grad_phi,
                                   v,            e.h,     it.h_max};
      step = update_nu(session.penalty, tctx, params.steps);
    } catch (const Error& err) {
      return fail(InnerStatus::numerical_breakdown, err.what());
    }

    const double alpha_max = fraction_to_boundary(it.x, step.d, ctx.tau);
    LineSearchResult ls =
        step.iteration_class == IterationClass::f
            ? f_linesearch(problem, it, step.d, alpha_max, ctx.mu, params.rho,
                           params.max_ls_halvings)
            : h_linesearch(problem, it, step.d, alpha_max, params.rho,
                           params.max_ls_halvings);
    if (!ls.accepted) {
      return fail(InnerStatus::numerical_breakdown,
                  std::string(to_string(step.iteration_class)) +
                      "-line search exceeded its halving cap");
    }

    Iterate next;
    next.x = std::move(ls.x);
    next.eval = std::move(ls.eval);
    next.lambda = step.lambda_next;
    snap.z_raw = estimate_duals(it.x, it.z, step.d, ctx.mu);
    next.z = reset_duals(snap.z_raw, next.x, ctx.mu, ctx.kappa_sigma);
    next.h_max = update_h_max(it.h_max, e.h, next.eval.h, step.iteration_class,
                              params.kappa_h, params.kappa_h_bar);

    if (!problem.has_hessian()) {
      session.bfgs.update(next.x - it.x,
                          lagrangian_gradient(next.eval, next.lambda) -
                              lagrangian_gradient(e, next.lambda));
    }

    TraceRecord record;
    record.outer_index = session.outer_index;
    record.inner_index = k;
    record.mu = ctx.mu;
    record.f = next.eval.f;
    record.h = next.eval.h;
    record.h_max = next.h_max;
    record.E_mu = error_mu(next, ctx);
    record.alpha = ls.alpha;
    record.alpha_max = alpha_max;
    record.iteration_class = step.iteration_class;
    record.nu = step.nu;
    record.zeta = step.zeta;
    record.halvings = ls.halvings;
    record.nu_halvings = step.nu_halvings;
    record.norm_v = step.v.norm();
    record.norm_t = step.t.norm();
    record.norm_d = step.d.norm();
    record.min_x = next.x.minCoeff();
    record.min_z = next.z.minCoeff();

    if (session.observer) {
      snap.outer_index = session.outer_index;
      snap.inner_index = k;
      snap.mu = ctx.mu;
      snap.tau = ctx.tau;
      snap.kappa_sigma = ctx.kappa_sigma;
      snap.rho = params.rho;
      snap.before = it;
      snap.step = step;
      snap.alpha_max = alpha_max;
      snap.alpha = ls.alpha;
      snap.ls_halvings = ls.halvings;
      snap.after = next;
      session.observer(snap);
    }
    if (session.trace != nullptr) {
      try {
        session.trace->emit(record);
      } catch (const ContractViolation& err) {
        return fail(InnerStatus::numerical_breakdown, err.what());
      }
    }

    it = std::move(next);
    ++result.iterations;
  }
}

}  // namespace qtf

#include "qtfunnel/barrier.hpp"

#include <algorithm>
#include <cmath>

#include "qtfunnel/errors.hpp"

namespace qtf {

namespace {

void require_positive(const Vector& x, const char* where) {
  if (!(x.array() > 0.0).all()) {
    throw DomainError(std::string(where) + ": x must be strictly positive");
  }
}

}  // namespace

void BarrierContext::validate() const {
  if (!(mu > 0.0)) {
    throw ContractViolation("BarrierContext: mu must be positive");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ContractViolation("BarrierContext: tau must lie in (0, 1)");
  }
  if (!(kappa_eps > 0.0)) {
    throw ContractViolation("BarrierContext: kappa_eps must be positive");
  }
  if (!(s_max > 1.0)) {
    throw ContractViolation("BarrierContext: s_max must exceed 1");
  }
  if (!(kappa_sigma > 1.0)) {
    throw ContractViolation("BarrierContext: kappa_sigma must exceed 1");
  }
}

double barrier_value(double f, const Vector& x, double mu) {
  require_positive(x, "barrier_value");
  return f - mu * x.array().log().sum();
}

Vector barrier_gradient(const Vector& grad_f, const Vector& x, double mu) {
  require_positive(x, "barrier_gradient");
  if (grad_f.size() != x.size()) {
    throw ContractViolation("barrier_gradient: dimension mismatch");
  }
  return grad_f.array() - mu / x.array();
}

Scaling scaling_factors(const Vector& lambda, const Vector& z, double s_max) {
  const double n = static_cast<double>(z.size());
  const double m = static_cast<double>(lambda.size());
  Scaling s;
  const double dual_mean =
      (lambda.lpNorm<1>() + z.lpNorm<1>()) / std::max(1.0, m + n);
  s.s_d = std::max(s_max, dual_mean) / s_max;
  s.s_c = std::max(s_max, z.lpNorm<1>() / std::max(1.0, n)) / s_max;
  return s;
}

double OptimalityResiduals::max() const {
  return std::max({dual, complementarity, primal});
}

OptimalityResiduals optimality_residuals(const Iterate& iterate, double mu,
                                         double s_max) {
  const Evaluation& e = iterate.eval;
  const Scaling s = scaling_factors(iterate.lambda, iterate.z, s_max);
  Vector dual = e.grad_f - iterate.z;
  if (iterate.lambda.size() > 0) {
    dual += e.jac_c * iterate.lambda;
  }
  const Vector comp = iterate.x.cwiseProduct(iterate.z).array() - mu;
  OptimalityResiduals r;
  r.dual = dual.norm() / s.s_d;
  r.complementarity = comp.norm() / s.s_c;
  r.primal = e.c.norm();
  return r;
}

double error_mu(const Iterate& iterate, const BarrierContext& ctx) {
  return optimality_residuals(iterate, ctx.mu, ctx.s_max).max();
}

double error_zero(const Iterate& iterate, double s_max) {
  return optimality_residuals(iterate, 0.0, s_max).max();
}

Vector estimate_duals(const Vector& x, const Vector& z, const Vector& d,
                      double mu) {
  require_positive(x, "estimate_duals");
  return (mu - z.array() * d.array()) / x.array();
}

Vector reset_duals(const Vector& z_raw, const Vector& x_new, double mu,
                   double kappa_sigma) {
  require_positive(x_new, "reset_duals");
  if (!(kappa_sigma > 1.0)) {
    throw ContractViolation("reset_duals: kappa_sigma must exceed 1");
  }
  Vector z(z_raw.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double upper = kappa_sigma * mu / x_new(i);
    const double lower = mu / (kappa_sigma * x_new(i));
    z(i) = std::max(std::min(z_raw(i), upper), lower);
  }
  return z;
}

}  // namespace qtf

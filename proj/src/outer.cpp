#include "qtfunnel/outer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include <Eigen/QR>

#include "qtfunnel/errors.hpp"

namespace qtf {

namespace {

using Setter = std::function<void(OuterConfig&, double)>;

int as_count(double value) {
  if (value != std::floor(value) || value < 0.0 || value > 1e9) {
    throw ContractViolation("expected a nonnegative integer, got " +
                            std::to_string(value));
  }
  return static_cast<int>(value);
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"mu0", [](OuterConfig& c, double v) { c.mu0 = v; }},
      {"eps_tol", [](OuterConfig& c, double v) { c.eps_tol = v; }},
      {"kappa_eps", [](OuterConfig& c, double v) { c.kappa_eps = v; }},
      {"mu_linear", [](OuterConfig& c, double v) { c.mu_linear = v; }},
      {"mu_superlinear", [](OuterConfig& c, double v) { c.mu_superlinear = v; }},
      {"tau_min", [](OuterConfig& c, double v) { c.tau_min = v; }},
      {"max_outer", [](OuterConfig& c, double v) { c.max_outer = as_count(v); }},
      {"s_max", [](OuterConfig& c, double v) { c.s_max = v; }},
      {"kappa_sigma", [](OuterConfig& c, double v) { c.kappa_sigma = v; }},
      {"rho", [](OuterConfig& c, double v) { c.inner.rho = v; }},
      {"kappa_h", [](OuterConfig& c, double v) { c.inner.kappa_h = v; }},
      {"kappa_h_bar", [](OuterConfig& c, double v) { c.inner.kappa_h_bar = v; }},
      {"max_ls_halvings",
       [](OuterConfig& c, double v) { c.inner.max_ls_halvings = as_count(v); }},
      {"max_inner", [](OuterConfig& c, double v) { c.inner.max_inner = as_count(v); }},
      {"delta", [](OuterConfig& c, double v) { c.inner.steps.delta = v; }},
      {"sigma1", [](OuterConfig& c, double v) { c.inner.steps.sigma1 = v; }},
      {"sigma2", [](OuterConfig& c, double v) { c.inner.steps.sigma2 = v; }},
      {"kappa1", [](OuterConfig& c, double v) { c.inner.steps.kappa1 = v; }},
      {"kappa2", [](OuterConfig& c, double v) { c.inner.steps.kappa2 = v; }},
      {"b1_scale", [](OuterConfig& c, double v) { c.inner.steps.b1_scale = v; }},
      {"nu0", [](OuterConfig& c, double v) { c.inner.steps.nu0 = v; }},
      {"kappa_nu", [](OuterConfig& c, double v) { c.inner.steps.kappa_nu = v; }},
      {"M_nu", [](OuterConfig& c, double v) { c.inner.steps.M_nu = v; }},
      {"nu_min_const", [](OuterConfig& c, double v) { c.inner.steps.nu_min_const = v; }},
      {"max_nu_halvings",
       [](OuterConfig& c, double v) { c.inner.steps.max_nu_halvings = as_count(v); }},
  };
  return table;
}

}  // namespace

void OuterConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw ContractViolation(std::string("OuterConfig: ") + what);
    }
  };
  require(mu0 > 0.0, "mu0 must be positive");
  require(eps_tol > 0.0, "eps_tol must be positive");
  require(kappa_eps > 0.0, "kappa_eps must be positive");
  require(mu_linear > 0.0 && mu_linear < 1.0, "mu_linear must lie in (0, 1)");
  require(mu_superlinear > 1.0 && mu_superlinear <= 2.0,
          "mu_superlinear must lie in (1, 2]");
  require(tau_min > 0.0 && tau_min < 1.0, "tau_min must lie in (0, 1)");
  require(max_outer > 0, "max_outer must be positive");
  require(s_max > 1.0, "s_max must exceed 1");
  require(kappa_sigma > 1.0, "kappa_sigma must exceed 1");
  inner.validate();
}

void OuterConfig::set(std::string_view key, double value) {
  const auto it = setters().find(key);
  if (it == setters().end()) {
    throw ContractViolation("unknown parameter '" + std::string(key) + "'");
  }
  it->second(*this, value);
}

std::vector<std::string> OuterConfig::parameter_names() {
  std::vector<std::string> names;
  for (const auto& [name, setter] : setters()) {
    names.push_back(name);
  }
  return names;
}

nlohmann::json OuterConfig::to_json() const {
  const StepParameters& s = inner.steps;
  return {{"mu0", mu0},
          {"eps_tol", eps_tol},
          {"kappa_eps", kappa_eps},
          {"mu_linear", mu_linear},
          {"mu_superlinear", mu_superlinear},
          {"tau_min", tau_min},
          {"max_outer", max_outer},
          {"s_max", s_max},
          {"kappa_sigma", kappa_sigma},
          {"rho", inner.rho},
          {"kappa_h", inner.kappa_h},
          {"kappa_h_bar", inner.kappa_h_bar},
          {"max_ls_halvings", inner.max_ls_halvings},
          {"max_inner", inner.max_inner},
          {"delta", s.delta},
          {"sigma1", s.sigma1},
          {"sigma2", s.sigma2},
          {"kappa1", s.kappa1},
          {"kappa2", s.kappa2},
          {"b1_scale", s.b1_scale},
          {"nu0", s.nu0},
          {"kappa_nu", s.kappa_nu},
          {"M_nu", s.M_nu},
          {"nu_min_const", s.nu_min_const},
          {"max_nu_halvings", s.max_nu_halvings}};
}

double update_mu(double mu, const OuterConfig& cfg) {
  if (!(mu > 0.0)) {
    throw ContractViolation("update_mu: mu must be positive");
  }
  return std::max(cfg.eps_tol / 10.0,
                  std::min(cfg.mu_linear * mu, std::pow(mu, cfg.mu_superlinear)));
}

double update_tau(double mu, double tau_min) {
  if (!(mu > 0.0)) {
    throw ContractViolation("update_tau: mu must be positive");
  }
  return std::max(tau_min, 1.0 - mu);
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kkt_converged:
      return "kkt-converged";
    case SolveStatus::infeasible_stationary:
      return "infeasible-stationary";
    case SolveStatus::iteration_limit:
      return "iteration-limit";
    case SolveStatus::numerical_breakdown:
      return "numerical-breakdown";
  }
  return "unknown";
}

Vector initial_multipliers(const Evaluation& eval, const Vector& z) {
  const Eigen::Index m = eval.jac_c.cols();
  if (m == 0) {
    return Vector::Zero(0);
  }
  const Vector rhs = z - eval.grad_f;
  return eval.jac_c.completeOrthogonalDecomposition().solve(rhs);
}

SolveReport solve(const Problem& problem, const Vector& x0,
                  const OuterConfig& cfg, IterationObserver observer) {
  const auto started = std::chrono::steady_clock::now();
  problem.validate();
  cfg.validate();
  if (x0.size() != problem.n) {
    throw ContractViolation("solve: x0 has wrong dimension");
  }

  SolveReport report;
  const auto finish = [&](SolveStatus status, std::string message,
                          const Iterate& it) -> SolveReport {
    report.status = status;
    report.message = std::move(message);
    report.x = it.x;
    report.lambda = it.lambda;
    report.z = it.z;
    report.f = it.eval.f;
    report.h = it.eval.h;
    report.E0 = error_zero(it, cfg.s_max);
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    return std::move(report);
  };

  Iterate it;
  it.x = x0;
  for (Eigen::Index i = 0; i < it.x.size(); ++i) {
    if (!(it.x(i) >= 1e-8)) {
      report.warnings.push_back("x0[" + std::to_string(i) +
                                "] moved into the interior (1e-8)");
      it.x(i) = 1e-8;
    }
  }

  double mu = cfg.mu0;
  double tau = update_tau(mu, cfg.tau_min);
  try {
    it.eval = evaluate(problem, it.x);
  } catch (const EvaluationError& e) {
    it.lambda = Vector::Zero(problem.m);
    it.z = Vector::Ones(problem.n);
    it.eval.c = Vector::Zero(problem.m);
    it.eval.grad_f = Vector::Zero(problem.n);
    it.eval.jac_c = Matrix::Zero(problem.n, problem.m);
    return finish(SolveStatus::numerical_breakdown, e.what(), it);
  }
  it.z = mu / it.x.array();
  it.lambda = initial_multipliers(it.eval, it.z);

  InnerSession session;
  session.bfgs = BfgsHessian(problem.n);
  session.trace = &report.trace;
  session.observer = std::move(observer);

  for (int j = 0;; ++j) {
    report.outer_iterations = j;
    if (error_zero(it, cfg.s_max) <= cfg.eps_tol) {
      return finish(SolveStatus::kkt_converged, "", it);
    }
    if (j >= cfg.max_outer) {
      return finish(SolveStatus::iteration_limit, "outer iteration limit reached", it);
    }

    BarrierContext ctx;
    ctx.mu = mu;
    ctx.tau = tau;
    ctx.kappa_eps = cfg.kappa_eps;
    ctx.s_max = cfg.s_max;
    ctx.kappa_sigma = cfg.kappa_sigma;
    session.outer_index = j;
    report.mu_history.push_back(mu);

    InnerResult inner = inner_solve(problem, it, ctx, cfg.inner, session);
    report.inner_iterations += inner.iterations;
    it = std::move(inner.iterate);
    switch (inner.status) {
      case InnerStatus::converged:
        break;
      case InnerStatus::infeasible_stationary:
        return finish(SolveStatus::infeasible_stationary, inner.message, it);
      case InnerStatus::iteration_limit:
        return finish(SolveStatus::iteration_limit, inner.message, it);
      case InnerStatus::numerical_breakdown:
        return finish(SolveStatus::numerical_breakdown, inner.message, it);
    }

    mu = update_mu(mu, cfg);
    tau = update_tau(mu, cfg.tau_min);
  }
}

}  // namespace qtf

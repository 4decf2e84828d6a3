// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Every check recomputes the quantity it
// asserts from the problem callbacks and the raw iterate rather than reading
// the value the solver already stored.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../test_helpers.hpp"
#include "qtfunnel/barrier.hpp"
#include "qtfunnel/errors.hpp"
#include "qtfunnel/funnel.hpp"
#include "qtfunnel/linalg.hpp"
#include "qtfunnel/outer.hpp"
#include "qtfunnel/problems.hpp"
#include "qtfunnel/steps.hpp"

namespace {

using qtf::Evaluation;
using qtf::IterationClass;
using qtf::IterationSnapshot;
using qtf::Matrix;
using qtf::OuterConfig;
using qtf::Problem;
using qtf::RegistryEntry;
using qtf::SolveReport;
using qtf::SolveStatus;
using qtf::Vector;

// ---------------------------------------------------------------------------
// Independent formulas

double phi(const Problem& p, const Vector& x, double mu) {
  double s = p.objective(x);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s -= mu * std::log(x(i));
  }
  return s;
}

Vector phi_gradient(const Problem& p, const Vector& x, double mu) {
  Vector g = p.objective_gradient(x);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    g(i) -= mu / x(i);
  }
  return g;
}

Vector constraints(const Problem& p, const Vector& x) {
  return p.m > 0 ? p.constraints(x) : Vector(0);
}

Matrix jacobian(const Problem& p, const Vector& x) {
  return p.m > 0 ? p.constraint_jacobian(x) : Matrix(p.n, 0);
}

/// E₀ from the definition: scaled dual, complementarity and primal residuals.
double kkt_error(const Problem& p, const Vector& x, const Vector& lambda, const Vector& z,
                 double s_max) {
  const double n = static_cast<double>(p.n);
  const double m = static_cast<double>(p.m);
  const double s_d =
      std::max(s_max, (lambda.lpNorm<1>() + z.lpNorm<1>()) / (m + n)) / s_max;
  const double s_c = std::max(s_max, z.lpNorm<1>() / n) / s_max;
  const Vector dual = p.objective_gradient(x) + jacobian(p, x) * lambda - z;
  const Vector comp = x.cwiseProduct(z);
  const double primal = p.m > 0 ? constraints(p, x).norm() : 0.0;
  return std::max({dual.norm() / s_d, comp.norm() / s_c, primal});
}

// ---------------------------------------------------------------------------
// Bookkeeping

struct Check {
  long long checked = 0;
  long long failed = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      if (failed == 0) {
        first_failure = what;
      }
      ++failed;
    }
  }
  bool ok() const { return failed == 0; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Run {
  std::string label;
  Problem problem;
  SolveReport report;
  std::vector<IterationSnapshot> snaps;
  double seconds = 0.0;
};

Run run(const std::string& label, const Problem& p, const Vector& x0,
        const OuterConfig& cfg) {
  Run r;
  r.label = label;
  r.problem = p;
  const auto start = std::chrono::steady_clock::now();
  r.report = qtf::solve(p, x0, cfg, [&r](const IterationSnapshot& s) { r.snaps.push_back(s); });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string where(const Run& r, const IterationSnapshot& s) {
  return r.label + " (j=" + std::to_string(s.outer_index) +
         ", k=" + std::to_string(s.inner_index) + ")";
}

struct Verdict {
  bool pass;
  std::string detail;
};

Verdict from(const Check& c, const std::string& summary) {
  if (c.ok()) {
    return {true, summary + ", " + std::to_string(c.checked) + " checks"};
  }
  return {false, std::to_string(c.failed) + "/" + std::to_string(c.checked) +
                     " checks failed; first: " + c.first_failure};
}

// ---------------------------------------------------------------------------
// Criteria

Verdict analytic_solves(const std::vector<Run>& runs, const OuterConfig& cfg) {
  Check c;
  const struct {
    const char* name;
    Vector target;
  } cases[] = {{"circle-line", qtf::testing::vec({1.5, 1.5})},
               {"hyperbola-linear", qtf::testing::vec({1.0, 1.0})}};
  std::ostringstream summary;
  for (const auto& cs : cases) {
    const Run* found = nullptr;
    for (const Run& r : runs) {
      if (r.label == cs.name) {
        found = &r;
      }
    }
    c.expect(found != nullptr, std::string(cs.name) + " missing");
    if (!found) {
      continue;
    }
    const SolveReport& rep = found->report;
    const double err = (rep.x - cs.target).lpNorm<Eigen::Infinity>();
    const double e0 = kkt_error(found->problem, rep.x, rep.lambda, rep.z, cfg.s_max);
    c.expect(rep.status == SolveStatus::kkt_converged, std::string(cs.name) + " status " +
                                                           std::string(to_string(rep.status)));
    c.expect(err <= 1e-4, std::string(cs.name) + " |x - x*| = " + fmt(err));
    c.expect(e0 <= 1e-8, std::string(cs.name) + " E0 = " + fmt(e0));
    c.expect(found->seconds <= 1.0, std::string(cs.name) + " took " + fmt(found->seconds) + " s");
    c.expect(rep.outer_iterations <= 50,
             std::string(cs.name) + " outer = " + std::to_string(rep.outer_iterations));
    summary << cs.name << " err " << fmt(err) << " E0 " << fmt(e0) << " outer "
            << rep.outer_iterations << " " << fmt(found->seconds) << "s; ";
  }

  // Fixed-μ inner solve of min x with μ = 0.25 from x = 1.
  const Problem p = qtf::find_registry_problem("barrier-1d").problem;
  qtf::BarrierContext ctx;
  ctx.mu = 0.25;
  ctx.tau = qtf::update_tau(ctx.mu, cfg.tau_min);
  ctx.kappa_eps = 1e-8;
  ctx.s_max = cfg.s_max;
  ctx.kappa_sigma = cfg.kappa_sigma;
  qtf::Iterate start;
  start.x = qtf::testing::vec({1.0});
  start.z = qtf::testing::vec({0.25});
  start.lambda = Vector(0);
  start.eval = qtf::evaluate(p, start.x);
  qtf::InnerSession session;
  session.bfgs = qtf::BfgsHessian(1);
  session.penalty.nu = cfg.inner.steps.nu0;
  const auto t0 = std::chrono::steady_clock::now();
  const qtf::InnerResult inner = qtf::inner_solve(p, start, ctx, cfg.inner, session);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double dev = std::abs(inner.iterate.x(0) - 0.25);
  c.expect(dev <= 1e-6, "barrier-1d |x - 0.25| = " + fmt(dev));
  c.expect(secs <= 1.0, "barrier-1d took " + fmt(secs) + " s");
  summary << "barrier-1d |x-0.25| " << fmt(dev) << " in " << inner.iterations << " its";
  return from(c, summary.str());
}

Verdict funnel_invariants(const std::vector<Run>& runs) {
  Check c;
  long long rows = 0;
  for (const Run& r : runs) {
    const auto& trace = r.report.trace.records();
    for (std::size_t i = 0; i < r.snaps.size(); ++i) {
      const IterationSnapshot& s = r.snaps[i];
      const double h_next = constraints(r.problem, s.after.x).norm();
      c.expect(h_next <= s.before.h_max + 1e-12,
               where(r, s) + " h_next " + fmt(h_next) + " > h_max " + fmt(s.before.h_max));
      c.expect(s.after.h_max <= s.before.h_max + 1e-12, where(r, s) + " h_max increased");
      c.expect(h_next <= s.after.h_max + 1e-12, where(r, s) + " h_next above new radius");
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
      ++rows;
      c.expect(trace[i].h <= trace[i].h_max + 1e-12, r.label + " trace row h > h_max");
      if (i > 0 && trace[i].outer_index == trace[i - 1].outer_index) {
        c.expect(trace[i].h_max <= trace[i - 1].h_max + 1e-12,
                 r.label + " trace h_max increased at row " + std::to_string(i));
        c.expect(trace[i].h <= trace[i - 1].h_max + 1e-12,
                 r.label + " trace h above previous radius at row " + std::to_string(i));
      }
    }
  }
  return from(c, std::to_string(rows) + " trace rows");
}

Verdict interior_invariants(const std::vector<Run>& runs, const OuterConfig& cfg) {
  Check c;
  for (const Run& r : runs) {
    for (const auto& row : r.report.trace.records()) {
      c.expect(row.min_x > 0.0, r.label + " trace min_x <= 0");
      c.expect(row.min_z > 0.0, r.label + " trace min_z <= 0");
    }
    for (const IterationSnapshot& s : r.snaps) {
      const Vector& x = s.after.x;
      const Vector& z = s.after.z;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double lo = s.mu / (cfg.kappa_sigma * x(i));
        const double hi = cfg.kappa_sigma * s.mu / x(i);
        c.expect(x(i) > 0.0, where(r, s) + " x <= 0");
        c.expect(z(i) >= lo * (1.0 - 1e-14) && z(i) <= hi * (1.0 + 1e-14),
                 where(r, s) + " z outside band: " + fmt(z(i)) + " not in [" + fmt(lo) + ", " +
                     fmt(hi) + "]");
      }
      // Trace min_z mirrors the post-reset vector.
    }
  }
  return from(c, "bands recomputed from (mu, x)");
}

struct StepFacts {
  Vector grad_phi;
  Vector c;
  Matrix jac;
  double h = 0.0;
  double lin_residual = 0.0;
  bool f_class = false;
};

StepFacts recompute(const Run& r, const IterationSnapshot& s, const OuterConfig& cfg) {
  StepFacts f;
  const Vector& x = s.before.x;
  f.grad_phi = phi_gradient(r.problem, x, s.mu);
  f.c = constraints(r.problem, x);
  f.jac = jacobian(r.problem, x);
  f.h = f.c.norm();
  f.lin_residual = r.problem.m > 0 ? (f.c + f.jac.transpose() * s.step.v).norm() : 0.0;
  const Vector d = s.step.v + s.step.t;
  f.f_class = -f.grad_phi.dot(d) >= cfg.inner.steps.sigma1 * std::pow(f.h, cfg.inner.steps.sigma2);
  return f;
}

Verdict acceptance_reverification(const std::vector<Run>& runs, const OuterConfig& cfg) {
  Check c;
  long long f_steps = 0;
  long long h_steps = 0;
  for (const Run& r : runs) {
    for (const IterationSnapshot& s : r.snaps) {
      const StepFacts facts = recompute(r, s, cfg);
      const Vector d = s.step.v + s.step.t;
      const Vector x_new = s.before.x + s.alpha * d;
      c.expect((x_new - s.after.x).lpNorm<Eigen::Infinity>() == 0.0,
               where(r, s) + " accepted point is not x + alpha d");
      c.expect(s.alpha > 0.0 && s.alpha <= s.alpha_max && s.alpha_max <= 1.0,
               where(r, s) + " alpha outside (0, alpha_max]");
      const double h_new = constraints(r.problem, x_new).norm();
      const bool recorded_f = s.step.iteration_class == IterationClass::f;
      c.expect(recorded_f == facts.f_class, where(r, s) + " class disagrees with the f-iteration test");
      if (recorded_f) {
        ++f_steps;
        const double lhs = phi(r.problem, s.before.x, s.mu) - phi(r.problem, x_new, s.mu);
        const double rhs = -s.rho * s.alpha * facts.grad_phi.dot(d);
        c.expect(lhs >= rhs, where(r, s) + " fred fails: " + fmt(lhs) + " < " + fmt(rhs));
        c.expect(h_new <= s.before.h_max, where(r, s) + " hmax fails");
      } else {
        ++h_steps;
        const double lin =
            r.problem.m > 0 ? (facts.c + s.alpha * facts.jac.transpose() * d).norm() : 0.0;
        c.expect(h_new <= (1.0 - s.rho) * facts.h + s.rho * lin,
                 where(r, s) + " hred fails: " + fmt(h_new));
      }
    }
  }
  return from(c, std::to_string(f_steps) + " f-steps, " + std::to_string(h_steps) + " h-steps");
}

Verdict nu_loop_certification(const std::vector<Run>& runs, const OuterConfig& cfg) {
  Check c;
  const qtf::StepParameters& sp = cfg.inner.steps;
  int max_halvings = 0;
  for (const Run& r : runs) {
    c.expect(r.report.message.find("halving cap") == std::string::npos,
             r.label + " hit the nu halving cap");
    c.expect(r.report.status != SolveStatus::numerical_breakdown,
             r.label + " ended in numerical breakdown: " + r.report.message);
    for (const IterationSnapshot& s : r.snaps) {
      const StepFacts facts = recompute(r, s, cfg);
      const double coupling =
          r.problem.m > 0 ? (facts.jac.transpose() * s.step.t).norm() : 0.0;
      const bool funnel_coupling_ok = coupling <= sp.kappa1 * (s.before.h_max - facts.lin_residual);
      const bool h_coupling_ok = coupling <= sp.kappa2 * (facts.h - facts.lin_residual);
      const bool pair = facts.f_class ? funnel_coupling_ok : h_coupling_ok;
      c.expect(pair, where(r, s) + (facts.f_class ? " f-class without the funnel coupling bound" : " h-class without the h coupling bound") +
                         ": coupling " + fmt(coupling));
      c.expect(s.step.nu_halvings < sp.max_nu_halvings, where(r, s) + " halving cap reached");
      max_halvings = std::max(max_halvings, s.step.nu_halvings);
      if (r.problem.m > 0) {
        const Vector lambda = facts.jac.transpose() * s.step.t / s.step.nu;
        c.expect((lambda - s.step.lambda_next).norm() <=
                     1e-12 * std::max(1.0, lambda.norm()),
                 where(r, s) + " multiplier estimate mismatch");
      }
    }
  }
  return from(c, "max nu halvings per iteration " + std::to_string(max_halvings));
}

Verdict tangential_oracle() {
  Check c;
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<int> n_dist(1, 10);
  std::uniform_int_distribution<int> m_dist(0, 3);
  std::uniform_real_distribution<double> log_nu(-6.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = n_dist(rng);
    const int m = std::min(n, m_dist(rng));
    const Matrix a = qtf::testing::random_matrix(rng, n, n);
    Matrix w = 0.5 * (a + a.transpose());
    const double lmin = qtf::oracle::min_eigenvalue(w);
    if (lmin < 0.1) {
      w.diagonal().array() += 0.1 - lmin;  // SPD repair
    }
    const Matrix jac = qtf::testing::random_matrix(rng, n, m);
    const Vector grad_phi = qtf::testing::random_vector(rng, n);
    const Vector v = qtf::testing::random_vector(rng, n);
    const double nu = std::pow(10.0, log_nu(rng));
    const auto sol = qtf::quasi_tangential(w, jac, grad_phi, v, nu, 0.0);
    c.expect(sol.has_value(), "trial " + std::to_string(trial) + " reported indefinite");
    if (!sol) {
      continue;
    }
    const Vector g = grad_phi + w * v;
    const auto ref = qtf::oracle::minimize_quadratic(
        qtf::oracle::penalized_matrix(w, jac, nu, 0.0), g);
    c.expect(ref.has_value(), "oracle saw an indefinite matrix");
    if (!ref) {
      continue;
    }
    const double diff = (sol->t - *ref).norm();
    const double tol = 1e-8 * std::max(1.0, sol->t.norm());
    worst = std::max(worst, diff / std::max(1.0, sol->t.norm()));
    c.expect(diff <= tol, "trial " + std::to_string(trial) + " |dt| = " + fmt(diff));
  }
  return from(c, "worst relative deviation " + fmt(worst));
}

/// Random update_nu calls arranged so that halving ν cannot cure the negative
/// curvature and the shift must be activated.
std::vector<qtf::StepBundle> forced_shift_bundles(std::vector<Vector>& model_gradients) {
  std::vector<qtf::StepBundle> out;
  std::mt19937_64 rng(77);
  qtf::StepParameters params;
  params.kappa_nu = 1.0;
  params.M_nu = 1.0;
  params.nu_min_const = 0.5;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    Matrix w = qtf::testing::random_matrix(rng, n, n);
    w = (0.5 * (w + w.transpose())).eval();
    w(0, 0) = -5.0;
    // Constraint gradients avoid the first coordinate.
    Matrix jac = qtf::testing::random_matrix(rng, n, 1);
    jac(0, 0) = 0.0;
    for (int j = 1; j < n; ++j) {
      w(0, j) = w(j, 0) = 0.0;
    }
    const Vector c = qtf::testing::vec({1.0});
    const Vector v = qtf::normal_step(jac, c, 1.0);
    const Vector grad_phi = qtf::testing::random_vector(rng, n);
    qtf::PenaltyState state;
    const qtf::TangentialContext ctx{w, jac, c, grad_phi, v, 1.0, 1.0};
    try {
      out.push_back(qtf::update_nu(state, ctx, params));
      model_gradients.push_back(grad_phi + w * v);
    } catch (const qtf::Error&) {
      // Counted by the caller through the bundle total.
    }
  }
  return out;
}

Verdict step_bound(const std::vector<Run>& runs) {
  Check c;
  long long in_runs = 0;
  for (const Run& r : runs) {
    for (const IterationSnapshot& s : r.snaps) {
      if (!(s.step.zeta > 0.0)) {
        continue;
      }
      ++in_runs;
      const Vector g = s.grad_phi + s.w_tilde * s.step.v;
      const double bound = 2.0 / s.step.b1 * g.norm();
      c.expect(s.step.t.norm() <= bound,
               where(r, s) + " |t| = " + fmt(s.step.t.norm()) + " > " + fmt(bound));
    }
  }
  std::vector<Vector> gradients;
  const std::vector<qtf::StepBundle> forced = forced_shift_bundles(gradients);
  c.expect(forced.size() == 50, "forced-shift instances failed: " +
                                    std::to_string(50 - forced.size()));
  long long forced_active = 0;
  for (std::size_t i = 0; i < forced.size(); ++i) {
    const qtf::StepBundle& b = forced[i];
    if (!(b.zeta > 0.0)) {
      continue;
    }
    ++forced_active;
    const double bound = 2.0 / b.b1 * gradients[i].norm();
    c.expect(b.t.norm() <= bound, "forced instance " + std::to_string(i) + " violates the bound");
  }
  c.expect(forced_active > 0, "no forced instance activated the shift");
  return from(c, std::to_string(in_runs) + " shifted iterations in runs, " +
                     std::to_string(forced_active) + " forced");
}

Verdict normal_step_decrease(const std::vector<Run>& runs) {
  Check c;
  long long iterations = 0;
  for (const Run& r : runs) {
    for (const IterationSnapshot& s : r.snaps) {
      ++iterations;
      const Vector cx = constraints(r.problem, s.before.x);
      if (r.problem.m == 0) {
        continue;
      }
      const Matrix jac = jacobian(r.problem, s.before.x);
      const double lin = (cx + jac.transpose() * s.step.v).norm();
      c.expect(lin <= cx.norm() + 1e-12, where(r, s) + " linearized residual grew");
    }
  }
  std::mt19937_64 rng(8);
  int deficient = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 9;
    const int m = 1 + trial % 3;
    Matrix jac = qtf::testing::random_matrix(rng, n, m);
    if (trial % 2 == 0 || m > n) {
      jac.col(m - 1) = jac.col(0) * (m > 1 ? -3.0 : 0.0);
    }
    if (qtf::rank_estimate(jac) < m) {
      ++deficient;
    }
    const Vector cv = qtf::testing::random_vector(rng, m);
    const Vector v = qtf::normal_step(jac, cv, 1.0);
    c.expect((cv + jac.transpose() * v).norm() <= cv.norm() + 1e-12,
             "random instance " + std::to_string(trial));
  }
  c.expect(deficient > 0 && deficient < 100, "random instances missed a rank branch");
  return from(c, std::to_string(iterations) + " iterations + 100 random (" +
                     std::to_string(deficient) + " rank deficient)");
}

Verdict derivative_hygiene() {
  Check c;
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (const RegistryEntry& e : qtf::registry()) {
    for (int k = 0; k < 20; ++k) {
      const Vector x = qtf::testing::random_positive(rng, e.problem.n);
      const double err = qtf::check_derivatives(e.problem, x).max_error();
      worst = std::max(worst, err);
      c.expect(err <= 1e-6, e.name + " derivative error " + fmt(err));

      const double mu = 0.3;
      const Vector g = qtf::barrier_gradient(e.problem.objective_gradient(x), x, mu);
      for (int i = 0; i < e.problem.n; ++i) {
        const double hstep = 1e-6 * std::max(1.0, std::abs(x(i)));
        Vector xp = x;
        Vector xm = x;
        xp(i) += hstep;
        xm(i) -= hstep;
        const double fd = (qtf::barrier_value(e.problem.objective(xp), xp, mu) -
                           qtf::barrier_value(e.problem.objective(xm), xm, mu)) /
                          (2.0 * hstep);
        const double rel = std::abs(fd - g(i)) / std::max(1.0, std::abs(g(i)));
        worst = std::max(worst, rel);
        c.expect(rel <= 1e-6, e.name + " barrier gradient error " + fmt(rel));
      }
    }
  }
  return from(c, "worst " + fmt(worst));
}

Verdict infeasibility_detection(const OuterConfig& cfg) {
  Check c;
  const RegistryEntry e = qtf::find_registry_problem("constant-infeasible");
  const SolveReport r = qtf::solve(e.problem, e.x0, cfg);
  c.expect(r.status == SolveStatus::infeasible_stationary,
           "status " + std::string(to_string(r.status)));
  c.expect(r.inner_iterations <= 2, "inner iterations " + std::to_string(r.inner_iterations));
  return from(c, std::string(to_string(r.status)) + " after " +
                     std::to_string(r.inner_iterations) + " inner iterations");
}

}  // namespace

int main() {
  const OuterConfig cfg;

  std::vector<Run> runs;
  for (const RegistryEntry& e : qtf::registry()) {
    runs.push_back(run(e.name, e.problem, e.x0, cfg));
  }
  // Perturbed starts widen the sample of accepted steps.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  for (const RegistryEntry& e : qtf::registry()) {
    for (int k = 0; k < 3; ++k) {
      Vector x0 = e.x0;
      for (Eigen::Index i = 0; i < x0.size(); ++i) {
        x0(i) *= jitter(rng);
      }
      runs.push_back(run(e.name + "#" + std::to_string(k + 1), e.problem, x0, cfg));
    }
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"analytic solves", [&] { return analytic_solves(runs, cfg); }},
      {"funnel invariants", [&] { return funnel_invariants(runs); }},
      {"interior invariants", [&] { return interior_invariants(runs, cfg); }},
      {"acceptance re-verification", [&] { return acceptance_reverification(runs, cfg); }},
      {"nu-loop certification", [&] { return nu_loop_certification(runs, cfg); }},
      {"quasi-tangential oracle", [] { return tangential_oracle(); }},
      {"step bound under shift", [&] { return step_bound(runs); }},
      {"normal-step decrease", [&] { return normal_step_decrease(runs); }},
      {"derivative hygiene", [] { return derivative_hygiene(); }},
      {"infeasibility detection", [&] { return infeasibility_detection(cfg); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) {
      ++failures;
    }
    std::printf("criterion %2zu [PRIMARY] %-28s %s  %s\n", i + 1, criteria[i].first.c_str(),
                v.pass ? "PASS" : "FAIL", v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

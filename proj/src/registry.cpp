#include <cmath>

#include "qtfunnel/errors.hpp"
#include "qtfunnel/problems.hpp"

namespace qtf {

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) {
    v(i++) = value;
  }
  return v;
}

// min (x₁−2)² + (x₂−1)²  s.t.  x₁ − x₂ = 0
RegistryEntry circle_line() {
  Problem p;
  p.name = "circle-line";
  p.n = 2;
  p.m = 1;
  p.objective = [](const Vector& x) {
    return (x(0) - 2.0) * (x(0) - 2.0) + (x(1) - 1.0) * (x(1) - 1.0);
  };
  p.objective_gradient = [](const Vector& x) {
    return vec({2.0 * (x(0) - 2.0), 2.0 * (x(1) - 1.0)});
  };
  p.constraints = [](const Vector& x) { return vec({x(0) - x(1)}); };
  p.constraint_jacobian = [](const Vector&) {
    Matrix j(2, 1);
    j << 1.0, -1.0;
    return j;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    return Matrix(2.0 * Matrix::Identity(2, 2));
  };
  return {"circle-line", "min (x1-2)^2+(x2-1)^2 s.t. x1-x2=0", p,
          vec({0.5, 2.0}), vec({1.5, 1.5})};
}

// min x₁ + x₂  s.t.  x₁x₂ − 1 = 0
RegistryEntry hyperbola_linear() {
  Problem p;
  p.name = "hyperbola-linear";
  p.n = 2;
  p.m = 1;
  p.objective = [](const Vector& x) { return x(0) + x(1); };
  p.objective_gradient = [](const Vector&) { return vec({1.0, 1.0}); };
  p.constraints = [](const Vector& x) { return vec({x(0) * x(1) - 1.0}); };
  p.constraint_jacobian = [](const Vector& x) {
    Matrix j(2, 1);
    j << x(1), x(0);
    return j;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector& lambda) {
    Matrix hess(2, 2);
    hess << 0.0, lambda(0), lambda(0), 0.0;
    return hess;
  };
  return {"hyperbola-linear", "min x1+x2 s.t. x1*x2=1", p, vec({3.0, 0.5}),
          vec({1.0, 1.0})};
}

// min x, bound-constrained only.
RegistryEntry barrier_1d() {
  Problem p;
  p.name = "barrier-1d";
  p.n = 1;
  p.m = 0;
  p.objective = [](const Vector& x) { return x(0); };
  p.objective_gradient = [](const Vector&) { return vec({1.0}); };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    return Matrix(Matrix::Zero(1, 1));
  };
  return {"barrier-1d", "min x s.t. x>=0 (no equality constraints)", p,
          vec({1.0}), vec({0.0})};
}

// c(x) ≡ 1 has ∇c = 0 everywhere: every point is a stationary point of ‖c‖.
RegistryEntry constant_infeasible() {
  Problem p;
  p.name = "constant-infeasible";
  p.n = 1;
  p.m = 1;
  p.objective = [](const Vector& x) { return x(0); };
  p.objective_gradient = [](const Vector&) { return vec({1.0}); };
  p.constraints = [](const Vector&) { return vec({1.0}); };
  p.constraint_jacobian = [](const Vector&) { return Matrix(Matrix::Zero(1, 1)); };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    return Matrix(Matrix::Zero(1, 1));
  };
  return {"constant-infeasible", "min x s.t. 1=0 (stationary infeasibility)", p,
          vec({1.0}), std::nullopt};
}

// min (x₁−2)² + (x₂−2)²  s.t.  x₁ + x₂ <= 2, rewritten with a slack.
RegistryEntry slack_demo() {
  GeneralProblem g;
  g.name = "slack-demo";
  g.n = 2;
  g.objective = [](const Vector& x) {
    return (x(0) - 2.0) * (x(0) - 2.0) + (x(1) - 2.0) * (x(1) - 2.0);
  };
  g.objective_gradient = [](const Vector& x) {
    return vec({2.0 * (x(0) - 2.0), 2.0 * (x(1) - 2.0)});
  };
  g.inequality_count = 1;
  g.inequalities = [](const Vector& x) { return vec({x(0) + x(1) - 2.0}); };
  g.inequality_jacobian = [](const Vector&) { return Matrix(Matrix::Ones(2, 1)); };
  g.lagrangian_hessian = [](const Vector&, const Vector&, const Vector&) {
    return Matrix(2.0 * Matrix::Identity(2, 2));
  };
  Reformulation r = slack_reformulate(g);
  const Vector x = vec({0.5, 0.5});
  const Vector y0 = r.layout.lift(x, g.inequalities(x));
  return {"slack-demo", "min (x1-2)^2+(x2-2)^2 s.t. x1+x2<=2 via a slack",
          r.problem, y0, vec({1.0, 1.0, 0.0})};
}

// Nonconvex near the start: f'' = 3x² − 2 < 0 for x < 0.816.
RegistryEntry quartic_well() {
  Problem p;
  p.name = "quartic-well";
  p.n = 1;
  p.m = 0;
  p.objective = [](const Vector& x) {
    return 0.25 * std::pow(x(0), 4) - x(0) * x(0);
  };
  p.objective_gradient = [](const Vector& x) {
    return vec({std::pow(x(0), 3) - 2.0 * x(0)});
  };
  p.lagrangian_hessian = [](const Vector& x, const Vector&) {
    Matrix hess(1, 1);
    hess << 3.0 * x(0) * x(0) - 2.0;
    return hess;
  };
  return {"quartic-well", "min x^4/4 - x^2 s.t. x>=0 (indefinite start)", p,
          vec({0.3}), vec({std::sqrt(2.0)})};
}

// Two parallel constraints: ∇c has rank one everywhere.
RegistryEntry redundant_pair() {
  Problem p;
  p.name = "redundant-pair";
  p.n = 2;
  p.m = 2;
  p.objective = [](const Vector& x) {
    return (x(0) - 2.0) * (x(0) - 2.0) + (x(1) - 2.0) * (x(1) - 2.0);
  };
  p.objective_gradient = [](const Vector& x) {
    return vec({2.0 * (x(0) - 2.0), 2.0 * (x(1) - 2.0)});
  };
  p.constraints = [](const Vector& x) {
    const double s = x(0) + x(1) - 2.0;
    return vec({s, 2.0 * s});
  };
  p.constraint_jacobian = [](const Vector&) {
    Matrix j(2, 2);
    j << 1.0, 2.0, 1.0, 2.0;
    return j;
  };
  p.lagrangian_hessian = [](const Vector&, const Vector&) {
    return Matrix(2.0 * Matrix::Identity(2, 2));
  };
  return {"redundant-pair",
          "min (x1-2)^2+(x2-2)^2 s.t. x1+x2=2 stated twice (rank-deficient)", p,
          vec({0.5, 3.0}), vec({1.0, 1.0})};
}

// min x₁ + x₂ + x₃ on the sphere ‖x‖² = 3; two bounds active at the solution.
RegistryEntry sphere_corner() {
  Problem p;
  p.name = "sphere-corner";
  p.n = 3;
  p.m = 1;
  p.objective = [](const Vector& x) { return x.sum(); };
  p.objective_gradient = [](const Vector&) { return Vector(Vector::Ones(3)); };
  p.constraints = [](const Vector& x) { return vec({x.squaredNorm() - 3.0}); };
  p.constraint_jacobian = [](const Vector& x) { return Matrix(2.0 * x); };
  p.lagrangian_hessian = [](const Vector&, const Vector& lambda) {
    return Matrix(2.0 * lambda(0) * Matrix::Identity(3, 3));
  };
  return {"sphere-corner", "min x1+x2+x3 s.t. |x|^2=3 (active bounds)", p,
          vec({1.5, 0.6, 0.4}), vec({std::sqrt(3.0), 0.0, 0.0})};
}

}  // namespace

std::vector<RegistryEntry> registry() {
  return {circle_line(),  hyperbola_linear(), barrier_1d(),
          constant_infeasible(), slack_demo(), quartic_well(),
          redundant_pair(), sphere_corner()};
}

std::vector<std::string> registry_names() {
  std::vector<std::string> names;
  for (const RegistryEntry& e : registry()) {
    names.push_back(e.name);
  }
  return names;
}

RegistryEntry find_registry_problem(std::string_view name) {
  for (RegistryEntry& e : registry()) {
    if (e.name == name) {
      return std::move(e);
    }
  }
  std::string known;
  for (const std::string& n : registry_names()) {
    known += (known.empty() ? "" : ", ") + n;
  }
  throw UnknownProblem("unknown problem '" + std::string(name) +
                       "'; registered problems: " + known);
}

}  // namespace qtf

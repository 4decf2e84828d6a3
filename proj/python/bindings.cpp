#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtfunnel/barrier.hpp"
#include "qtfunnel/errors.hpp"
#include "qtfunnel/funnel.hpp"
#include "qtfunnel/linalg.hpp"
#include "qtfunnel/outer.hpp"
#include "qtfunnel/problems.hpp"
#include "qtfunnel/steps.hpp"

namespace py = pybind11;
using namespace qtf;

namespace {

using ObjectiveFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;
using MatrixFn = std::function<Matrix(const Vector&)>;
using HessianFn = std::function<Matrix(const Vector&, const Vector&)>;

Problem make_problem(int n, int m, ObjectiveFn objective, VectorFn gradient,
                     std::optional<VectorFn> constraints, std::optional<MatrixFn> jacobian,
                     std::optional<HessianFn> hessian, std::string name) {
  Problem p;
  p.name = std::move(name);
  p.n = n;
  p.m = m;
  p.objective = std::move(objective);
  p.objective_gradient = std::move(gradient);
  if (constraints) p.constraints = std::move(*constraints);
  if (jacobian) p.constraint_jacobian = std::move(*jacobian);
  if (hessian) p.lagrangian_hessian = std::move(*hessian);
  p.validate();
  return p;
}

OuterConfig config_from(const std::optional<py::dict>& params) {
  OuterConfig cfg;
  if (params) {
    for (const auto& item : *params) {
      cfg.set(py::cast<std::string>(item.first), py::cast<double>(item.second));
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interior point solver with quasi-tangential steps and a trust funnel";

  static py::exception<Error> base(m, "QtfError", PyExc_RuntimeError);
  static py::exception<ContractViolation> contract(m, "ContractViolation", base.ptr());
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  static py::exception<UnknownProblem> unknown(m, "UnknownProblem", base.ptr());
  static py::exception<NumericalBreakdown> breakdown(m, "NumericalBreakdown", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ContractViolation& e) {
      py::set_error(contract, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const UnknownProblem& e) {
      py::set_error(unknown, e.what());
    } catch (const NumericalBreakdown& e) {
      py::set_error(breakdown, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<Problem>(m, "Problem")
      .def(py::init(&make_problem), py::arg("n"), py::arg("m"), py::arg("objective"),
           py::arg("gradient"), py::arg("constraints") = py::none(),
           py::arg("jacobian") = py::none(), py::arg("hessian") = py::none(),
           py::arg("name") = "python",
           "Standard-form problem min f(x) s.t. c(x) = 0, x >= 0. The Jacobian is "
           "n x m with constraint gradients as columns.")
      .def_readonly("name", &Problem::name)
      .def_readonly("n", &Problem::n)
      .def_readonly("m", &Problem::m)
      .def_property_readonly("has_hessian", &Problem::has_hessian)
      .def("evaluate", [](const Problem& p, const Vector& x) {
        const Evaluation e = evaluate(p, x);
        py::dict d;
        d["f"] = e.f;
        d["c"] = e.c;
        d["grad_f"] = e.grad_f;
        d["jac_c"] = e.jac_c;
        d["h"] = e.h;
        return d;
      });

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("outer_index", &TraceRecord::outer_index)
      .def_readonly("inner_index", &TraceRecord::inner_index)
      .def_readonly("mu", &TraceRecord::mu)
      .def_readonly("f", &TraceRecord::f)
      .def_readonly("h", &TraceRecord::h)
      .def_readonly("h_max", &TraceRecord::h_max)
      .def_readonly("E_mu", &TraceRecord::E_mu)
      .def_readonly("alpha", &TraceRecord::alpha)
      .def_readonly("alpha_max", &TraceRecord::alpha_max)
      .def_property_readonly("iteration_class",
                             [](const TraceRecord& r) { return std::string(to_string(r.iteration_class)); })
      .def_readonly("nu", &TraceRecord::nu)
      .def_readonly("zeta", &TraceRecord::zeta)
      .def_readonly("halvings", &TraceRecord::halvings)
      .def_readonly("nu_halvings", &TraceRecord::nu_halvings)
      .def_readonly("norm_v", &TraceRecord::norm_v)
      .def_readonly("norm_t", &TraceRecord::norm_t)
      .def_readonly("norm_d", &TraceRecord::norm_d)
      .def_readonly("min_x", &TraceRecord::min_x)
      .def_readonly("min_z", &TraceRecord::min_z);

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("status",
                             [](const SolveReport& r) { return std::string(to_string(r.status)); })
      .def_readonly("message", &SolveReport::message)
      .def_readonly("x", &SolveReport::x)
      .def_readonly("lambda_", &SolveReport::lambda)
      .def_readonly("z", &SolveReport::z)
      .def_readonly("f", &SolveReport::f)
      .def_readonly("h", &SolveReport::h)
      .def_readonly("E0", &SolveReport::E0)
      .def_readonly("outer_iterations", &SolveReport::outer_iterations)
      .def_readonly("inner_iterations", &SolveReport::inner_iterations)
      .def_readonly("mu_history", &SolveReport::mu_history)
      .def_readonly("warnings", &SolveReport::warnings)
      .def_readonly("wall_time_seconds", &SolveReport::wall_time_seconds)
      .def_property_readonly("trace",
                             [](const SolveReport& r) { return r.trace.records(); })
      .def("__repr__", [](const SolveReport& r) {
        return "<SolveReport status=" + std::string(to_string(r.status)) +
               " outer=" + std::to_string(r.outer_iterations) +
               " inner=" + std::to_string(r.inner_iterations) + ">";
      });

  m.def(
      "solve",
      [](const Problem& p, const Vector& x0, std::optional<py::dict> params) {
        return solve(p, x0, config_from(params));
      },
      py::arg("problem"), py::arg("x0"), py::arg("params") = py::none(),
      "Run the barrier method. params maps constant names to values.");
  m.def("parameter_names", &OuterConfig::parameter_names);
  m.def("registry_names", &registry_names);
  m.def(
      "load_problem",
      [](const std::string& name) {
        LoadedProblem loaded = load_problem(name);
        return py::make_tuple(std::move(loaded.problem), loaded.x0);
      },
      py::arg("name_or_path"), "Registry problem or JSON file, returned as (problem, x0).");
  m.def(
      "check_derivatives",
      [](const Problem& p, const Vector& x, double step) {
        const DerivativeReport r = check_derivatives(p, x, step);
        py::dict d;
        d["gradient"] = r.gradient_error;
        d["jacobian"] = r.jacobian_error;
        d["hessian"] = r.hessian_error ? py::cast(*r.hessian_error) : py::none();
        d["max"] = r.max_error();
        return d;
      },
      py::arg("problem"), py::arg("x"), py::arg("step") = kDefaultDifferenceStep);

  // Building blocks, mostly for experimentation and testing.
  m.def("barrier_value", &barrier_value, py::arg("f"), py::arg("x"), py::arg("mu"));
  m.def("barrier_gradient", &barrier_gradient, py::arg("grad_f"), py::arg("x"), py::arg("mu"));
  m.def("normal_step", &normal_step, py::arg("jac_c"), py::arg("c"), py::arg("delta") = 1.0);
  m.def(
      "quasi_tangential",
      [](const Matrix& w, const Matrix& jac, const Vector& grad_phi, const Vector& v, double nu,
         double zeta) -> std::optional<Vector> {
        auto sol = quasi_tangential(w, jac, grad_phi, v, nu, zeta);
        if (!sol) return std::nullopt;
        return sol->t;
      },
      py::arg("w"), py::arg("jac_c"), py::arg("grad_phi"), py::arg("v"), py::arg("nu"),
      py::arg("zeta") = 0.0, "Tangential step, or None when the penalized matrix is indefinite.");
  m.def("zeta_repair", &zeta_repair, py::arg("m_base"), py::arg("b1"));
  m.def("fraction_to_boundary", &fraction_to_boundary, py::arg("x"), py::arg("d"), py::arg("tau"));
  m.def("estimate_duals", &estimate_duals, py::arg("x"), py::arg("z"), py::arg("d"), py::arg("mu"));
  m.def("reset_duals", &reset_duals, py::arg("z_raw"), py::arg("x"), py::arg("mu"),
        py::arg("kappa_sigma"));
  m.def(
      "update_mu",
      [](double mu, std::optional<py::dict> params) { return update_mu(mu, config_from(params)); },
      py::arg("mu"), py::arg("params") = py::none());
  m.def("rank_estimate", &rank_estimate, py::arg("jac"));
}

"""Primal-dual interior point solver with quasi-tangential steps and a trust funnel.

Problems are stated as ``min f(x)  s.t.  c(x) = 0, x >= 0``::

    import numpy as np
    import qtfunnel

    problem = qtfunnel.Problem(
        n=2, m=1,
        objective=lambda x: (x[0] - 2) ** 2 + (x[1] - 1) ** 2,
        gradient=lambda x: np.array([2 * (x[0] - 2), 2 * (x[1] - 1)]),
        constraints=lambda x: np.array([x[0] - x[1]]),
        jacobian=lambda x: np.array([[1.0], [-1.0]]),
    )
    report = qtfunnel.solve(problem, np.array([0.5, 2.0]))
"""

from ._core import (
    ContractViolation,
    NumericalBreakdown,
    ParseError,
    Problem,
    QtfError,
    SolveReport,
    TraceRecord,
    UnknownProblem,
    barrier_gradient,
    barrier_value,
    check_derivatives,
    estimate_duals,
    fraction_to_boundary,
    load_problem,
    normal_step,
    parameter_names,
    quasi_tangential,
    rank_estimate,
    registry_names,
    reset_duals,
    solve,
    update_mu,
    zeta_repair,
)

__all__ = [
    "ContractViolation",
    "NumericalBreakdown",
    "ParseError",
    "Problem",
    "QtfError",
    "SolveReport",
    "TraceRecord",
    "UnknownProblem",
    "barrier_gradient",
    "barrier_value",
    "check_derivatives",
    "estimate_duals",
    "fraction_to_boundary",
    "load_problem",
    "normal_step",
    "parameter_names",
    "quasi_tangential",
    "rank_estimate",
    "registry_names",
    "reset_duals",
    "solve",
    "update_mu",
    "zeta_repair",
]

__version__ = "0.1.0"

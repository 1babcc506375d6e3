"""Convergence studies for method-of-lines discretizations of 1D hyperbolic
balance laws (C++ core)."""

from ._hypconv import (
    UsageError,
    converge,
    default_plan,
    exact_cell_average,
    exact_solution,
    fit_loglog_slope,
    fit_two_term,
    interpolate_edges,
    reconstruct,
    reproduce_figure,
    solve,
    source_term,
    verify_ode,
)

__all__ = [
    "UsageError",
    "converge",
    "default_plan",
    "exact_cell_average",
    "exact_solution",
    "fit_loglog_slope",
    "fit_two_term",
    "interpolate_edges",
    "reconstruct",
    "reproduce_figure",
    "solve",
    "source_term",
    "verify_ode",
]

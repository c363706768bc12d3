"""Dual lower bounds for incomplete quadratic assignment problems."""

from ._qapbound import (
    DEFAULT_TAU,
    BoundReport,
    IlapDual,
    IlapInstance,
    IlapSolution,
    IqapInstance,
    LapDual,
    LapInstance,
    LapSolution,
    PreconditionError,
    augment_instance,
    compute_lower_bound,
    ilap_dual_objective,
    lap_dual_objective,
    parse_dd,
    parse_qaplib,
    run_cli,
    serialize_dd,
    shift_to_relative_interior,
    solve_ilap,
    solve_lap,
)

__all__ = [
    "DEFAULT_TAU",
    "BoundReport",
    "IlapDual",
    "IlapInstance",
    "IlapSolution",
    "IqapInstance",
    "LapDual",
    "LapInstance",
    "LapSolution",
    "PreconditionError",
    "augment_instance",
    "compute_lower_bound",
    "ilap_dual_objective",
    "lap_dual_objective",
    "parse_dd",
    "parse_qaplib",
    "run_cli",
    "serialize_dd",
    "shift_to_relative_interior",
    "solve_ilap",
    "solve_lap",
]

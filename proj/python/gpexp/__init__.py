"""Capacity and random-coding error exponents for channel coding with side
information against distortion-constrained adversaries, plus a Monte-Carlo
stacked-binning simulator.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._gpexp import (
    BudgetError,
    ConfigError,
    Scenario,
    SolverError,
    __version__,
    auxiliary_bound_capacity,
    auxiliary_bound_exponent,
    binary_entropy,
    build_preset,
    c_priv,
    capacity,
    er_cam_pub_closed,
    exponent,
    g_star,
    simulate,
    sweep,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "Scenario",
    "SolverError",
    "__version__",
    "auxiliary_bound_capacity",
    "auxiliary_bound_exponent",
    "binary_entropy",
    "build_preset",
    "c_priv",
    "capacity",
    "er_cam_pub_closed",
    "exponent",
    "g_star",
    "simulate",
    "sweep",
]

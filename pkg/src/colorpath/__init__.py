"""Exact and parameterized solvers for few-color paths in planar colored graphs."""

from .graph import ColoredPlaneGraph, Instance
from .oracle import oracle_min_colors, oracle_solve
from .solver import Solution, SolverConfig, solve, threshold

__all__ = [
    "ColoredPlaneGraph",
    "Instance",
    "Solution",
    "SolverConfig",
    "oracle_min_colors",
    "oracle_solve",
    "solve",
    "threshold",
]

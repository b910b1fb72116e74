"""Exact rational linear feasibility with checkable certificates."""

from .fourier_motzkin import fm_feasible
from .simplex import (
    Budget,
    Constraint,
    FeasibilityResult,
    Infeasible,
    LinearSystem,
    Point,
    integerize,
    phase_one,
    solve,
)

__all__ = [
    "Budget", "Constraint", "FeasibilityResult", "Infeasible", "LinearSystem", "Point",
    "fm_feasible", "integerize", "phase_one", "solve",
]

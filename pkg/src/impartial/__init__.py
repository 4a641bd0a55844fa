"""Workbench for seven impartial combinatorial games.

Solving core plus rule engines, closed-form predictors, OEIS
regression data, a batch CLI, and an HTTP play service.
"""

from .engine import (
    GamePosition,
    NodeBudgetExceeded,
    Outcome,
    PeriodicityReport,
    SolveCache,
    Solver,
    detect_period,
    mex,
    nim_sum,
)

__version__ = "0.1.0"

__all__ = [
    "GamePosition",
    "NodeBudgetExceeded",
    "Outcome",
    "PeriodicityReport",
    "SolveCache",
    "Solver",
    "detect_period",
    "mex",
    "nim_sum",
    "__version__",
]

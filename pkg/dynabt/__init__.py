"""
dynabt

Constraint-satisfaction search with explanation bookkeeping: depth-first search,
backjumping and dynamic backtracking over pluggable elimination mechanisms.

Versioning: CalVer format vYY.MMDD[.dev#]
- Stable releases: v26.1019 (October 19, 2026)
- Development versions: v26.1019.dev1 (first dev iteration on that date)
"""

__version__ = "26.1019"

from .core import Constraint, PartialSolution, Problem
from .engines import (
    ALGORITHMS,
    Heuristics,
    Limits,
    SearchOutcome,
    solve_backjump,
    solve_dfs,
    solve_dynamic,
    solve_dynamic_v1,
    solve_explained_dfs,
    solve_oldest_culprit,
)
from .manager import SolverManager

__all__ = [
    "ALGORITHMS",
    "Constraint",
    "Heuristics",
    "Limits",
    "PartialSolution",
    "Problem",
    "SearchOutcome",
    "SolverManager",
    "solve_backjump",
    "solve_dfs",
    "solve_dynamic",
    "solve_dynamic_v1",
    "solve_explained_dfs",
    "solve_oldest_culprit",
]

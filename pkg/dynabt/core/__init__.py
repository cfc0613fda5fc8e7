"""
Core Problem Model

Problems, constraints, partial solutions and constraint evaluation.
"""

from .model import (
    NEQ,
    Assignment,
    Constraint,
    PartialSolution,
    Problem,
    completed_constraints,
    first_violation,
    is_solution,
    validate_problem,
    violates,
)

__all__ = [
    "NEQ",
    "Assignment",
    "Constraint",
    "PartialSolution",
    "Problem",
    "completed_constraints",
    "first_violation",
    "is_solution",
    "validate_problem",
    "violates",
]

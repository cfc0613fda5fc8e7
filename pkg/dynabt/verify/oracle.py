"""
Brute-Force Oracle

Ground truth written independently of the core model: its own constraint
checker and an exhaustive solution table over the whole search space.
"""

import logging
from typing import List, Mapping, Tuple

import numpy as np

from ..core import Assignment, Problem
from ..errors import OracleGuardError, ProblemError

logger = logging.getLogger(__name__)

DEFAULT_MAX_SPACE = 10 ** 7


def _tuple_allowed(constraint, values: Tuple[str, ...]) -> bool:
    if constraint.kind is not None:
        return values[0] != values[1]
    for allowed in constraint.allowed:
        if tuple(allowed) == values:
            return True
    return False


def satisfies(problem: Problem, assignment: Mapping[str, str]) -> bool:
    """Reference checker for total assignments"""
    for name in problem.variables:
        if name not in assignment:
            raise ProblemError(f"assignment is missing '{name}'")
    for constraint in problem.constraints:
        if not _tuple_allowed(constraint, tuple(assignment[v] for v in constraint.scope)):
            return False
    return True


def consistent(problem: Problem, bindings: Mapping[str, str]) -> bool:
    """Whether every constraint whose scope is fully bound is satisfied"""
    for constraint in problem.constraints:
        if all(v in bindings for v in constraint.scope):
            if not _tuple_allowed(constraint, tuple(bindings[v] for v in constraint.scope)):
                return False
    return True


def check_space(problem: Problem, max_space: int = DEFAULT_MAX_SPACE) -> int:
    size = 1
    for name in problem.variables:
        size *= len(problem.domains[name])
    if size > max_space:
        raise OracleGuardError(size, max_space)
    return size


def _constraint_table(problem: Problem, constraint) -> np.ndarray:
    """Allowed-tuple table of one constraint, axes in scope order"""
    domains = [problem.domains[v] for v in constraint.scope]
    table = np.zeros(tuple(len(d) for d in domains), dtype=bool)
    positions = [{value: k for k, value in enumerate(d)} for d in domains]
    if constraint.kind is not None:
        for a, first in enumerate(domains[0]):
            for b, second in enumerate(domains[1]):
                table[a, b] = first != second
    else:
        for values in constraint.allowed:
            table[tuple(positions[k][value] for k, value in enumerate(values))] = True
    return table


def solution_space(problem: Problem, max_space: int = DEFAULT_MAX_SPACE) -> np.ndarray:
    """
    Boolean table over every total assignment, True at solutions.

    Axes follow declaration order and each axis follows its domain order.
    """
    check_space(problem, max_space)
    shape = tuple(len(problem.domains[name]) for name in problem.variables)
    space = np.ones(shape, dtype=bool)
    axis_of = {name: k for k, name in enumerate(problem.variables)}
    for constraint in problem.constraints:
        table = _constraint_table(problem, constraint)
        axes = [axis_of[v] for v in constraint.scope]
        order = np.argsort(axes)
        table = np.transpose(table, order)
        expanded = [1] * len(shape)
        for v in constraint.scope:
            expanded[axis_of[v]] = shape[axis_of[v]]
        space &= table.reshape(expanded)
    return space


def brute_force(problem: Problem, max_space: int = DEFAULT_MAX_SPACE) -> List[Assignment]:
    """Every solution, in declaration-ordered lexicographic order"""
    space = solution_space(problem, max_space)
    solutions = [
        {name: problem.domains[name][k] for name, k in zip(problem.variables, index)}
        for index in np.argwhere(space)
    ]
    logger.debug("oracle: %d solutions in a space of %d", len(solutions), space.size)
    return solutions


def extends(problem: Problem, space: np.ndarray, bindings: Mapping[str, str]) -> bool:
    """Whether some solution agrees with `bindings` (space from solution_space)"""
    index = []
    for name in problem.variables:
        if name in bindings:
            index.append(problem.domains[name].index(bindings[name]))
        else:
            index.append(slice(None))
    return bool(np.any(space[tuple(index)]))

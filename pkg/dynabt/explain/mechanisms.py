"""
Elimination Mechanisms

Each mechanism returns eliminating explanations for an unassigned
variable, at most one per value, in domain order. Mechanisms are pure
functions of (problem, partial, i) and vectorise constraint checks over the
problem's relation arrays.
"""

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Mapping, Sequence, Tuple, Union

import numpy as np

from ..core import PartialSolution, Problem
from ..errors import ConfigError
from .elimination import Explanation

Eliminator = Callable[[Problem, PartialSolution, str], Sequence[Explanation]]


def _violation_mask(problem: Problem, position: int, values: Mapping[str, str],
                    free: Tuple[str, ...]) -> np.ndarray:
    """
    True where constraint `position` is violated, over the product of the free variables' domains.

    Every scope variable must be either free or bound in `values`. Free
    variables outside the scope get a broadcast axis of length 1.
    """
    constraint = problem.constraints[position]
    index = []
    kept = []
    for name in constraint.scope:
        if name in free:
            index.append(slice(None))
            kept.append(name)
        else:
            index.append(problem.value_order[name][values[name]])
    allowed = problem.relation(position)[tuple(index)]
    axes = [kept.index(name) for name in free if name in kept]
    allowed = np.transpose(allowed, axes) if len(axes) > 1 else allowed
    shape = [len(problem.domains[name]) if name in kept else 1 for name in free]
    return ~np.reshape(allowed, shape)


def _is_completed(problem: Problem, position: int, values: Mapping[str, str],
                  free: Tuple[str, ...]) -> bool:
    return all(name in free or name in values for name in problem.constraints[position].scope)


def _first_violations(problem: Problem, positions: Sequence[int], values: Mapping[str, str],
                      free: Tuple[str, ...]) -> np.ndarray:
    """Index of the first violated completed constraint per free-value combination, -1 if none"""
    shape = tuple(len(problem.domains[name]) for name in free)
    first = np.full(shape, -1, dtype=np.intp)
    for position in positions:
        if not _is_completed(problem, position, values, free):
            continue
        kill = np.broadcast_to(_violation_mask(problem, position, values, free), shape)
        first[(first < 0) & kill] = position
    return first


def _assigned_scope(problem: Problem, position: int, values: Mapping[str, str]) -> FrozenSet[str]:
    return frozenset(name for name in problem.constraints[position].scope if name in values)


def eliminate_basic(problem: Problem, partial: PartialSolution, name: str) -> List[Explanation]:
    """
    Eliminate each value violating a completed constraint.

    The culprits are the assigned scope of the first violated constraint in
    declaration order, so a map-coloring value is blamed on the one
    neighbor holding that color.
    """
    values = partial.values
    domain = problem.domains[name]
    first = _first_violations(problem, problem.constraints_on[name], values, (name,))
    return [
        Explanation(domain[k], _assigned_scope(problem, int(first[k]), values))
        for k in np.flatnonzero(first >= 0)
    ]


def blame_everything(problem: Problem, partial: PartialSolution, name: str) -> List[Explanation]:
    """Same eliminations as eliminate_basic, each blamed on every assigned variable"""
    everything = frozenset(partial.assigned)
    return [Explanation(e.value, everything) for e in eliminate_basic(problem, partial, name)]


def eliminate_forward(problem: Problem, partial: PartialSolution, name: str) -> List[Explanation]:
    """
    Forward checking: basic eliminations plus values that wipe out a neighbor.

    Value v is also eliminated when some unassigned neighbor k (first in
    declaration order) has every value ruled out once i=v; the culprits are the
    assigned variables of the constraints doing the ruling out. A wipe-out
    that blames no assigned variable eliminates nothing.
    """
    values = partial.values
    domain = problem.domains[name]
    found: Dict[str, Explanation] = {e.value: e for e in eliminate_basic(problem, partial, name)}
    open_values = np.array([value not in found for value in domain], dtype=bool)

    for witness in problem.neighbors[name]:
        if not open_values.any():
            break
        if witness in values:
            continue
        wiped = _wipeouts(problem, values, name, witness) & open_values
        for k in np.flatnonzero(wiped):
            # with `name` bound to the value, the witness-only scan gives the same row
            first = _first_violations(problem, problem.constraints_on[witness],
                                      {**values, name: domain[k]}, (witness,))
            culprits = frozenset().union(*(
                _assigned_scope(problem, int(position), values)
                for position in np.unique(first)
            ))
            if culprits:
                found[domain[k]] = Explanation(domain[k], culprits)
                open_values[k] = False

    return [found[value] for value in domain if value in found]


def _wipeouts(problem: Problem, values: Mapping[str, str], name: str, witness: str) -> np.ndarray:
    """
    Per value of `name`, whether binding it leaves `witness` no value.

    Completed constraints on the witness alone are reduced to the witness
    values they leave alive. Constraints shared with `name` are then checked
    over those values only; a single binary one goes through its support
    classes.
    """
    free = (name, witness)
    size = len(problem.domains[name])
    alone, shared = [], []
    for position in problem.constraints_on[witness]:
        if name not in problem.constraints[position].scope:
            alone.append(position)
        elif _is_completed(problem, position, values, free):
            shared.append(position)

    alive = _first_violations(problem, alone, values, (witness,)) < 0
    if not alive.any():
        return np.ones(size, dtype=bool)
    if len(shared) == 1 and problem.constraints[shared[0]].arity == 2:
        labels, rows = problem.support_classes(shared[0], name)
        return ~rows[:, alive].any(axis=1)[labels]

    supported = np.ones((size, int(alive.sum())), dtype=bool)
    for position in shared:
        kill = np.broadcast_to(_violation_mask(problem, position, values, free), (size, alive.size))
        supported &= ~kill[:, alive]
    return ~supported.any(axis=1)


def _neighborhood(problem: Problem, name: str) -> Tuple[str, ...]:
    return problem.neighbors[name]


def _two_hop(problem: Problem, name: str) -> Tuple[str, ...]:
    reached = set(problem.neighbors[name])
    for neighbor in problem.neighbors[name]:
        reached.update(problem.neighbors[neighbor])
    reached.discard(name)
    return problem.sort_variables(reached)


def _everything(problem: Problem, name: str) -> Tuple[str, ...]:
    return tuple(v for v in problem.variables if v != name)


@dataclass(frozen=True)
class Mechanism:
    """
    A named elimination mechanism.

    `footprint(problem, i)` names the variables whose bindings can change
    the mechanism result; engines key their per-run cache on those bindings.
    """
    name: str
    eliminate: Eliminator
    footprint: Callable[[Problem, str], Tuple[str, ...]] = _everything

    def __call__(self, problem: Problem, partial: PartialSolution, name: str) -> Sequence[Explanation]:
        return self.eliminate(problem, partial, name)


MECHANISMS: Dict[str, Mechanism] = {
    'basic': Mechanism('basic', eliminate_basic, _neighborhood),
    'forward': Mechanism('forward', eliminate_forward, _two_hop),
    'blame-everything': Mechanism('blame-everything', blame_everything, _everything),
}


def get_mechanism(mechanism: Union[str, Mechanism, Eliminator]) -> Mechanism:
    """Resolve a registered name, a Mechanism, or a bare elimination function"""
    if isinstance(mechanism, Mechanism):
        return mechanism
    if isinstance(mechanism, str):
        try:
            return MECHANISMS[mechanism]
        except KeyError:
            raise ConfigError(
                f"unknown mechanism '{mechanism}' (choose from {', '.join(MECHANISMS)})"
            ) from None
    if callable(mechanism):
        return Mechanism(getattr(mechanism, '__name__', 'custom'), mechanism)
    raise ConfigError(f"not a mechanism: {mechanism!r}")

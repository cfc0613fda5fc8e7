"""
Problem Builders

Map coloring, the two worked examples used throughout the tests, and seeded
random binary CSPs.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..core import Constraint, Problem
from ..errors import ConfigError, ProblemError

FIGURE1_COLORS = ('red', 'yellow', 'blue')


@dataclass(frozen=True)
class MapSpec:
    """Regions, unordered borders between them, and the colors available"""
    regions: Tuple[str, ...]
    borders: Tuple[Tuple[str, str], ...]
    colors: Tuple[str, ...]

    def validate(self) -> List[str]:
        problems = []
        declared = set(self.regions)
        if len(declared) != len(self.regions):
            problems.append("duplicate region")
        if not self.colors:
            problems.append("no colors")
        for first, second in self.borders:
            for region in (first, second):
                if region not in declared:
                    problems.append(f"border {first}-{second} references undeclared region '{region}'")
            if first == second:
                problems.append(f"self-border on '{first}'")
        return problems


def map_coloring(spec: MapSpec) -> Problem:
    """One variable per region, colors as domain, one inequality per border"""
    problems = spec.validate()
    if problems:
        raise ProblemError("invalid map: " + "; ".join(problems))
    return Problem.build(
        ((region, spec.colors) for region in spec.regions),
        (Constraint.neq(first, second) for first, second in spec.borders),
    )


def figure1_spec() -> MapSpec:
    """
    The five-country walkthrough map.

    Czechoslovakia borders Albania only; Denmark borders Albania and Bulgaria;
    England borders Albania, Bulgaria and Denmark. Albania and Bulgaria do not
    touch.
    """
    return MapSpec(
        regions=('A', 'B', 'C', 'D', 'E'),
        borders=(('A', 'C'), ('A', 'D'), ('A', 'E'), ('B', 'D'), ('B', 'E'), ('D', 'E')),
        colors=FIGURE1_COLORS,
    )


def figure1_instance() -> Problem:
    return map_coloring(figure1_spec())


def figure1_walkthrough_preferences() -> Dict[str, Tuple[str, ...]]:
    """Value preferences that replay the walkthrough's choices (Bulgaria yellow, Czechoslovakia blue)"""
    return {'B': ('yellow',), 'C': ('blue',)}


def xyz_unsat_instance() -> Problem:
    """
    x, y, z over {0, 1} with one ternary constraint allowing nothing.

    Any choice of x and y leaves z without a value, and the dead end at z
    blames both x and y.
    """
    domain = ('0', '1')
    return Problem.build(
        (('x', domain), ('y', domain), ('z', domain)),
        (Constraint.extensional(('x', 'y', 'z'), ()),),
    )


def random_binary_csp(n: int, d: int, p1: float, p2: float, seed: int) -> Problem:
    """
    Random binary CSP: variables v0..v{n-1}, values 0..d-1.

    Each variable pair is constrained with probability p1; a constrained
    pair forbids each value pair independently with probability p2. The
    result depends only on the arguments.
    """
    if n < 1 or d < 1:
        raise ConfigError(f"random instances need n >= 1 and d >= 1 (got n={n}, d={d})")
    for label, p in (('p1', p1), ('p2', p2)):
        if not 0.0 <= p <= 1.0:
            raise ConfigError(f"{label} must lie in [0, 1], got {p}")
    if seed < 0:
        raise ConfigError(f"seed must be non-negative, got {seed}")

    rng = np.random.default_rng(seed)
    names = [f"v{k}" for k in range(n)]
    values = tuple(str(k) for k in range(d))
    constraints = []
    for first, second in combinations(names, 2):
        if rng.random() >= p1:
            continue
        keep = rng.random((d, d)) >= p2
        allowed = [(values[a], values[b]) for a, b in product(range(d), repeat=2) if keep[a, b]]
        constraints.append(Constraint.extensional((first, second), allowed))
    return Problem.build(((name, values) for name in names), constraints)


def relabel_values(problem: Problem, mapping: Dict[str, str]) -> Problem:
    """Rename values everywhere (used to check color symmetry); shorthand constraints are kept"""
    def rename(value: str) -> str:
        return mapping.get(value, value)

    constraints: Sequence[Constraint] = [
        c if c.is_shorthand else Constraint.extensional(c.scope, (tuple(rename(v) for v in t) for t in c.allowed))
        for c in problem.constraints
    ]
    return Problem.build(
        ((name, tuple(rename(v) for v in problem.domains[name])) for name in problem.variables),
        constraints,
    )

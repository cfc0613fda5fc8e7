"""
Mechanism Contract Checker

Runs a mechanism on every consistent sub-assignment of a small problem (a
seeded sample on larger ones) and checks each result against the oracle:
concise, culprits drawn from the assigned variables, correct for the values
it keeps, complete for the values it eliminates, and never eliminating a
value that extends to a solution.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Dict, Iterator, Optional, Tuple, Union

import numpy as np

from ..core import PartialSolution, Problem
from ..explain import Mechanism, get_mechanism
from .oracle import DEFAULT_MAX_SPACE, consistent, extends, solution_space

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 5


@dataclass(frozen=True)
class Counterexample:
    property: str
    bindings: Tuple[Tuple[str, str], ...]
    variable: str
    value: Optional[str]
    culprits: Tuple[str, ...]
    detail: str

    def describe(self) -> str:
        partial = ', '.join(f"{name}={value}" for name, value in self.bindings) or 'none'
        return (f"{self.property}: bindings=[{partial}], variable={self.variable}"
                f"{'' if self.value is None else f', value={self.value}'}"
                f"{'' if not self.culprits else ', culprits=' + ','.join(self.culprits)}: {self.detail}")


@dataclass
class MechanismReport:
    mechanism: str
    partials_checked: int = 0
    calls: int = 0
    counterexample: Optional[Counterexample] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> Dict:
        return {
            'mechanism': self.mechanism,
            'passed': self.passed,
            'partials_checked': self.partials_checked,
            'calls': self.calls,
            'counterexample': None if self.counterexample is None else self.counterexample.describe(),
        }


def _all_partials(problem: Problem) -> Iterator[Dict[str, str]]:
    names = problem.variables
    for size in range(len(names) + 1):
        for chosen in combinations(names, size):
            for values in product(*(problem.domains[v] for v in chosen)):
                yield dict(zip(chosen, values))


def _sampled_partials(problem: Problem, samples: int, seed: int) -> Iterator[Dict[str, str]]:
    rng = np.random.default_rng(seed)
    names = problem.variables
    yield {}
    for _ in range(samples):
        size = int(rng.integers(0, len(names) + 1))
        chosen = [names[k] for k in sorted(rng.choice(len(names), size=size, replace=False))]
        yield {v: problem.domains[v][int(rng.integers(len(problem.domains[v])))] for v in chosen}


def check_mechanism(mechanism: Union[str, Mechanism, Callable], problem: Problem,
                    max_space: int = DEFAULT_MAX_SPACE, samples: int = 2000, seed: int = 0) -> MechanismReport:
    """
    Check the elimination contract; stops at the first counterexample.

    Problems with at most five variables are checked on every consistent
    sub-assignment, larger ones on `samples` random sub-assignments.
    """
    mechanism = get_mechanism(mechanism)
    report = MechanismReport(mechanism.name)
    space = solution_space(problem, max_space)

    if len(problem.variables) <= EXHAUSTIVE_LIMIT:
        candidates = _all_partials(problem)
    else:
        candidates = _sampled_partials(problem, samples, seed)

    for bindings in candidates:
        if not consistent(problem, bindings):
            continue
        report.partials_checked += 1
        partial = PartialSolution(problem, bindings.items())
        for name in problem.variables:
            if name in bindings:
                continue
            report.calls += 1
            found = _check_call(problem, space, mechanism, partial, bindings, name)
            if found is not None:
                report.counterexample = found
                logger.warning("mechanism %s: %s", mechanism.name, found.describe())
                return report
    logger.info("mechanism %s: %d partial solutions, %d calls, no counterexample",
                mechanism.name, report.partials_checked, report.calls)
    return report


def _check_call(problem: Problem, space: np.ndarray, mechanism: Mechanism, partial: PartialSolution,
                bindings: Dict[str, str], name: str) -> Optional[Counterexample]:
    explanations = list(mechanism(problem, partial, name))
    context = tuple(partial.bindings)

    def failure(prop: str, value: Optional[str], culprits, detail: str) -> Counterexample:
        return Counterexample(prop, context, name, value, problem.sort_variables(culprits), detail)

    seen = set()
    for e in explanations:
        if e.value in seen:
            return failure('conciseness', e.value, e.culprits, "two explanations for one value")
        seen.add(e.value)
        if e.value not in problem.value_order[name]:
            return failure('culprits', e.value, e.culprits, "value outside the domain")
        if name in e.culprits or not e.culprits <= set(bindings):
            return failure('culprits', e.value, e.culprits, "culprits must be assigned variables other than i")

    for value in problem.domains[name]:
        extended = dict(bindings)
        extended[name] = value
        if value not in seen and not consistent(problem, extended):
            return failure('correctness', value, (), "kept value violates a completed constraint")
        if value in seen and extends(problem, space, extended):
            return failure('extendable', value, (), "eliminated value extends to a solution")

    for e in explanations:
        restricted = {v: bindings[v] for v in e.culprits}
        restricted[name] = e.value
        if extends(problem, space, restricted):
            return failure('completeness', e.value, e.culprits,
                           "the culprits' bindings with i=v extend to a solution")
    return None

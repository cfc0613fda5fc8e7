"""
Variable and value ordering rules.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Collection, Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from ..core import PartialSolution, Problem
from ..errors import ConfigError


class VariableRule(str, Enum):
    LEXICOGRAPHIC = 'lexicographic'
    CHEAPEST_FIRST = 'cheapest-first'


class ValueRule(str, Enum):
    LEXICOGRAPHIC = 'lexicographic'
    SEEDED_RANDOM = 'seeded-random'
    PREFERRED = 'preferred'


def _parse_rule(enum_type, raw, label: str):
    if isinstance(raw, enum_type):
        return raw
    try:
        return enum_type(raw)
    except ValueError:
        choices = ', '.join(member.value for member in enum_type)
        raise ConfigError(f"unknown {label} '{raw}' (choose from {choices})") from None


@dataclass(frozen=True)
class Heuristics:
    """
    How an engine picks the next variable and the value to try.

    `seed` drives the seeded-random value rule only; `preferences` lists, per
    variable, values tried before the rest of the domain (preferred rule).
    """
    variable_rule: VariableRule = VariableRule.LEXICOGRAPHIC
    value_rule: ValueRule = ValueRule.LEXICOGRAPHIC
    seed: int = 0
    preferences: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def from_names(cls, variable_rule: str = 'lexicographic', value_rule: str = 'lexicographic',
                   seed: int = 0, preferences: Optional[Mapping[str, Iterable[str]]] = None) -> 'Heuristics':
        """Build from the string names used in configuration and on the command line"""
        if not 0 <= int(seed) < 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed}")
        preferences = {name: tuple(values) for name, values in (preferences or {}).items()}
        value = _parse_rule(ValueRule, value_rule, 'value rule')
        if preferences and value is ValueRule.LEXICOGRAPHIC:
            value = ValueRule.PREFERRED
        return cls(
            variable_rule=_parse_rule(VariableRule, variable_rule, 'variable rule'),
            value_rule=value,
            seed=int(seed),
            preferences=preferences,
        )

    @property
    def needs_projection(self) -> bool:
        return self.variable_rule is VariableRule.CHEAPEST_FIRST

    def value_orders(self, problem: Problem) -> Dict[str, Tuple[str, ...]]:
        """
        The order in which each variable's values are tried during one run.

        Seeded-random draws one permutation per domain, in declaration order,
        from a generator seeded with `seed`.
        """
        if self.value_rule is ValueRule.SEEDED_RANDOM:
            rng = np.random.default_rng(self.seed)
            orders = {}
            for name in problem.variables:
                domain = problem.domains[name]
                orders[name] = tuple(domain[k] for k in rng.permutation(len(domain)))
            return orders

        orders = {name: tuple(problem.domains[name]) for name in problem.variables}
        if self.value_rule is ValueRule.PREFERRED:
            for name, preferred in self.preferences.items():
                if name not in orders:
                    raise ConfigError(f"preference given for unknown variable '{name}'")
                unknown = [v for v in preferred if v not in problem.value_order[name]]
                if unknown:
                    raise ConfigError(f"preferred values not in the domain of '{name}': {', '.join(unknown)}")
                first = tuple(dict.fromkeys(preferred))
                orders[name] = first + tuple(v for v in orders[name] if v not in first)
        return orders


def next_variable(heuristics: Heuristics, problem: Problem, partial: PartialSolution,
                  elimination_sets: Optional[Mapping[str, Collection[str]]] = None) -> str:
    """
    Pick the next variable to assign.

    Lexicographic takes the first unassigned variable in declaration order.
    Cheapest-first takes the one with the fewest values outside its
    elimination set; ties go to declaration order.
    """
    unassigned = list(partial.unassigned())
    if not unassigned:
        raise ValueError("every variable is already assigned")
    if heuristics.variable_rule is VariableRule.LEXICOGRAPHIC or elimination_sets is None:
        return unassigned[0]

    def remaining(name: str) -> int:
        eliminated = elimination_sets.get(name, ())
        return sum(1 for value in problem.domains[name] if value not in eliminated)

    return min(unassigned, key=lambda name: (remaining(name), problem.order[name]))


def choose_value(order: Tuple[str, ...], eliminated: Collection[str]) -> Optional[str]:
    """First value of `order` not eliminated, or None at a dead end"""
    for value in order:
        if value not in eliminated:
            return value
    return None

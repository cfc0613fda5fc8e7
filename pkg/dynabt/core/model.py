"""
Problem Model

Immutable constraint-satisfaction problems (variables, ordered finite domains,
extensional constraints), ordered partial solutions, and the constraint
evaluation primitives every engine shares.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import AbstractSet, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import ProblemError

NEQ = 'neq'

# Total map variable -> value covering every variable of a problem
Assignment = Dict[str, str]


@dataclass(frozen=True)
class Constraint:
    """
    An ordered scope and its allowed value tuples.

    Either `allowed` lists the permitted tuples explicitly, or `kind` is the
    binary shorthand 'neq' ("the two scope variables take unequal values").
    """
    scope: Tuple[str, ...]
    allowed: Tuple[Tuple[str, ...], ...] = ()
    kind: Optional[str] = None

    @classmethod
    def neq(cls, first: str, second: str) -> 'Constraint':
        return cls(scope=(first, second), kind=NEQ)

    @classmethod
    def extensional(cls, scope: Iterable[str], allowed: Iterable[Iterable[str]]) -> 'Constraint':
        return cls(scope=tuple(scope), allowed=tuple(tuple(t) for t in allowed))

    @property
    def is_shorthand(self) -> bool:
        return self.kind is not None

    @property
    def arity(self) -> int:
        return len(self.scope)

    @cached_property
    def _allowed_set(self) -> FrozenSet[Tuple[str, ...]]:
        return frozenset(self.allowed)

    def allows(self, values: Tuple[str, ...]) -> bool:
        """Whether the scope projection `values` is an allowed tuple"""
        if self.kind == NEQ:
            return values[0] != values[1]
        return values in self._allowed_set

    def expand(self, domains: Mapping[str, Tuple[str, ...]]) -> 'Constraint':
        """Extensional form of this constraint over the given domains"""
        if not self.is_shorthand:
            return self
        tuples = [t for t in product(*(domains[v] for v in self.scope)) if self.allows(t)]
        return Constraint.extensional(self.scope, tuples)


@dataclass(frozen=True)
class Problem:
    """
    A constraint-satisfaction problem: variables, their domains, and constraints.

    Declaration order of variables, of each domain, and of the constraints is
    significant: it is the canonical order used by lexicographic heuristics and
    by the first-violated-constraint scan.
    """
    variables: Tuple[str, ...]
    domains: Dict[str, Tuple[str, ...]]
    constraints: Tuple[Constraint, ...] = ()

    @classmethod
    def build(cls, domains: Iterable[Tuple[str, Iterable[str]]],
              constraints: Iterable[Constraint] = ()) -> 'Problem':
        """Build a problem from (variable, domain) pairs in declaration order"""
        pairs = [(name, tuple(values)) for name, values in domains]
        return cls(
            variables=tuple(name for name, _ in pairs),
            domains=dict(pairs),
            constraints=tuple(constraints),
        )

    @cached_property
    def order(self) -> Dict[str, int]:
        return {name: index for index, name in enumerate(self.variables)}

    @cached_property
    def value_order(self) -> Dict[str, Dict[str, int]]:
        return {name: {value: k for k, value in enumerate(self.domains.get(name, ()))}
                for name in self.variables}

    @cached_property
    def constraints_on(self) -> Dict[str, Tuple[int, ...]]:
        """Indexes of the constraints whose scope mentions each variable"""
        index: Dict[str, List[int]] = {name: [] for name in self.variables}
        for position, constraint in enumerate(self.constraints):
            for name in dict.fromkeys(constraint.scope):
                index.setdefault(name, []).append(position)
        return {name: tuple(positions) for name, positions in index.items()}

    @cached_property
    def neighbors(self) -> Dict[str, Tuple[str, ...]]:
        """Variables sharing at least one constraint with each variable, in declaration order"""
        result = {}
        for name in self.variables:
            found = set()
            for position in self.constraints_on.get(name, ()):
                found.update(self.constraints[position].scope)
            found.discard(name)
            result[name] = tuple(sorted(found, key=lambda v: self.order.get(v, len(self.order))))
        return result

    @property
    def search_space(self) -> int:
        """Number of total assignments (product of the domain sizes)"""
        size = 1
        for name in self.variables:
            size *= len(self.domains[name])
        return size

    def sort_variables(self, names: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(names, key=lambda v: self.order[v]))

    @cached_property
    def _relations(self) -> Dict[int, np.ndarray]:
        return {}

    def relation(self, position: int) -> np.ndarray:
        """
        Boolean array of constraint `position` indexed by domain positions of its scope.

        One axis per scope variable, sized by its domain; True marks an allowed tuple. Built lazily
        and cached on the problem.
        """
        cached = self._relations.get(position)
        if cached is not None:
            return cached
        constraint = self.constraints[position]
        domains = [self.domains[v] for v in constraint.scope]
        if constraint.kind == NEQ:
            first = np.asarray(domains[0], dtype=str)
            second = np.asarray(domains[1], dtype=str)
            array = first[:, None] != second[None, :]
        else:
            array = np.zeros(tuple(len(d) for d in domains), dtype=bool)
            if constraint.allowed:
                columns = [
                    np.fromiter((self.value_order[v][t[k]] for t in constraint.allowed),
                                dtype=np.intp, count=len(constraint.allowed))
                    for k, v in enumerate(constraint.scope)
                ]
                array[tuple(columns)] = True
        array.setflags(write=False)
        self._relations[position] = array
        return array

    @cached_property
    def _supports(self) -> Dict[Tuple[int, str], Tuple[np.ndarray, np.ndarray]]:
        return {}

    def support_classes(self, position: int, name: str) -> Tuple[np.ndarray, np.ndarray]:
        """
        Binary constraint `position` seen from `name`, with values of identical support merged.

        Returns (labels, rows): labels[k] is the class of the k-th value of
        `name`, and rows[c] marks the other scope variable's values allowed
        alongside class c. A crossing between two word slots has one class
        per letter at the crossing cell.
        """
        key = (position, name)
        cached = self._supports.get(key)
        if cached is not None:
            return cached
        scope = self.constraints[position].scope
        if len(scope) != 2 or name not in scope:
            raise ProblemError(f"constraint {position} is not a binary constraint on '{name}'")
        relation = self.relation(position)
        if scope[0] != name:
            relation = relation.T
        rows, labels = np.unique(relation, axis=0, return_inverse=True)
        labels = np.asarray(labels, dtype=np.intp).reshape(-1)
        rows.setflags(write=False)
        labels.setflags(write=False)
        self._supports[key] = (labels, rows)
        return labels, rows


class PartialSolution:
    """
    An ordered sequence of (variable, value) bindings.

    The set of bound variables is derived from the bindings. A partial
    solution is owned by a single engine run.
    """

    def __init__(self, problem: Problem, bindings: Iterable[Tuple[str, str]] = ()):
        self.problem = problem
        self._bindings: List[Tuple[str, str]] = []
        self._values: Dict[str, str] = {}
        for name, value in bindings:
            self.bind(name, value)

    def bind(self, name: str, value: str) -> None:
        if name in self._values:
            raise ProblemError(f"variable '{name}' is already bound to '{self._values[name]}'")
        if name not in self.problem.domains:
            raise ProblemError(f"unknown variable '{name}'")
        if value not in self.problem.value_order[name]:
            raise ProblemError(f"value '{value}' is not in the domain of '{name}'")
        self._bindings.append((name, value))
        self._values[name] = value

    def unbind(self, name: str) -> str:
        """Remove the binding of `name`, keeping the order of the others"""
        value = self._values.pop(name)
        self._bindings.remove((name, value))
        return value

    def pop(self) -> Tuple[str, str]:
        name, value = self._bindings.pop()
        del self._values[name]
        return name, value

    @property
    def bindings(self) -> Tuple[Tuple[str, str], ...]:
        return tuple(self._bindings)

    @property
    def assigned(self) -> AbstractSet[str]:
        """The set of bound variables"""
        return self._values.keys()

    @property
    def values(self) -> Mapping[str, str]:
        return self._values

    def value_of(self, name: str) -> Optional[str]:
        return self._values.get(name)

    def position(self, name: str) -> int:
        for index, (bound, _) in enumerate(self._bindings):
            if bound == name:
                return index
        raise KeyError(name)

    def prefix(self, name: str) -> Tuple[Tuple[str, str], ...]:
        """Bindings made before `name`"""
        return tuple(self._bindings[:self.position(name)])

    def last(self) -> Optional[Tuple[str, str]]:
        return self._bindings[-1] if self._bindings else None

    def is_complete(self) -> bool:
        return len(self._values) == len(self.problem.variables)

    def unassigned(self) -> Iterator[str]:
        """Unbound variables in declaration order"""
        return (name for name in self.problem.variables if name not in self._values)

    def as_assignment(self) -> Assignment:
        return {name: self._values[name] for name in self.problem.variables if name in self._values}

    def copy(self) -> 'PartialSolution':
        return PartialSolution(self.problem, self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __contains__(self, name: object) -> bool:
        return name in self._values

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialSolution):
            return NotImplemented
        return self._bindings == other._bindings

    def __repr__(self) -> str:
        inner = ', '.join(f"{name}:{value}" for name, value in self._bindings)
        return f"PartialSolution(⟨{inner}⟩)"


def validate_problem(problem: Problem) -> List[str]:
    """
    Return every invariant violation of `problem`; an empty list means valid.

    Violations are reported as data, never raised.
    """
    violations: List[str] = []
    seen = set()
    for name in problem.variables:
        if name in seen:
            violations.append(f"duplicate variable '{name}'")
        seen.add(name)
        domain = problem.domains.get(name)
        if domain is None:
            violations.append(f"variable '{name}' has no domain")
            continue
        if not domain:
            violations.append(f"empty domain: unfillable slot '{name}' has no values")
        if len(set(domain)) != len(domain):
            violations.append(f"duplicate value in the domain of '{name}'")
    for name in problem.domains:
        if name not in seen:
            violations.append(f"domain given for undeclared variable '{name}'")

    for index, constraint in enumerate(problem.constraints):
        label = f"constraint #{index} {'-'.join(constraint.scope)}"
        scope = constraint.scope
        if not scope:
            violations.append(f"{label}: empty scope")
        if len(set(scope)) != len(scope):
            violations.append(f"{label}: duplicate scope variable")
        unknown = [v for v in scope if v not in problem.domains]
        for name in unknown:
            violations.append(f"{label}: unknown scope variable '{name}'")
        if constraint.is_shorthand:
            if constraint.kind != NEQ:
                violations.append(f"{label}: unknown constraint kind '{constraint.kind}'")
            elif len(scope) != 2:
                violations.append(f"{label}: shorthand 'neq' requires a binary scope")
            if constraint.allowed:
                violations.append(f"{label}: shorthand constraints carry no allowed tuples")
            continue
        if unknown:
            continue
        for values in constraint.allowed:
            if len(values) != len(scope):
                violations.append(f"{label}: tuple {list(values)} does not match the scope arity")
                continue
            for name, value in zip(scope, values):
                if value not in problem.value_order.get(name, {}):
                    violations.append(f"{label}: tuple out of domain ({name}={value!r})")
    return violations


def _require_total(problem: Problem, assignment: Mapping[str, str]) -> None:
    missing = [name for name in problem.variables if name not in assignment]
    if missing:
        raise ProblemError(f"assignment is missing variables: {', '.join(missing)}")
    extra = [name for name in assignment if name not in problem.domains]
    if extra:
        raise ProblemError(f"assignment binds unknown variables: {', '.join(extra)}")
    for name in problem.variables:
        if assignment[name] not in problem.value_order[name]:
            raise ProblemError(f"value '{assignment[name]}' is not in the domain of '{name}'")


def is_solution(problem: Problem, assignment: Mapping[str, str]) -> bool:
    """True iff every constraint's scope projection of `assignment` is allowed"""
    _require_total(problem, assignment)
    return all(
        constraint.allows(tuple(assignment[v] for v in constraint.scope))
        for constraint in problem.constraints
    )


def completed_constraints(problem: Problem, assigned: AbstractSet[str], name: str) -> List[Constraint]:
    """Constraints whose scope lies inside `assigned` ∪ {name}, in declaration order"""
    return [
        constraint for constraint in problem.constraints
        if all(v == name or v in assigned for v in constraint.scope)
    ]


def first_violation(problem: Problem, values: Mapping[str, str],
                    extra: Tuple[str, str], among: Optional[Sequence[int]] = None) -> Optional[int]:
    """
    Index of the first completed constraint violated once `extra` joins `values`.

    `values` maps bound variables to values; scans in declaration order, over
    `among` (constraint indexes, ascending) when given.
    """
    name, value = extra
    positions = range(len(problem.constraints)) if among is None else among
    for index in positions:
        constraint = problem.constraints[index]
        projection = []
        for v in constraint.scope:
            if v == name:
                projection.append(value)
            elif v in values:
                projection.append(values[v])
            else:
                break
        else:
            if not constraint.allows(tuple(projection)):
                return index
    return None


def violates(problem: Problem, partial: PartialSolution,
             extra: Tuple[str, str]) -> Optional[Constraint]:
    """First completed constraint violated by `partial` extended with `extra`, or None"""
    if extra[0] in partial:
        raise ProblemError(f"variable '{extra[0]}' is already bound")
    index = first_violation(problem, partial.values, extra)
    return None if index is None else problem.constraints[index]

"""
Search Skeleton

One stepping loop shared by every backtracking procedure. A Strategy switches
between resetting and retaining elimination sets, chronological, suffix or
single-binding retreats, where the search resumes after a retreat, and which
culprit binding is retreated to.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from ..core import PartialSolution, Problem, is_solution
from ..errors import ConfigError, InvariantViolation
from ..explain import EliminationSet, Explanation, Mechanism, get_mechanism, prune_involving, total_entries
from .heuristics import Heuristics, choose_value, next_variable
from .trace import EventKind, Outcome, SearchOutcome, SearchStats, SearchTrace, TraceEvent

logger = logging.getLogger(__name__)


class PopMode(Enum):
    CHRONOLOGICAL = 'chronological'   # undo the last binding, whatever it is
    SUFFIX = 'suffix'                 # undo the last culprit binding and everything after it
    SINGLE = 'single'                 # undo the culprit binding only


class Resume(Enum):
    SAME = 'same'         # keep choosing a value for the retreated variable
    REFRESH = 'refresh'   # same, after merging fresh mechanism output for it
    SELECT = 'select'     # pick the next variable from scratch


@dataclass(frozen=True)
class Strategy:
    name: str
    explained: bool
    retain: bool
    pop: PopMode
    resume: Resume
    oldest: bool = False
    requires_node_cap: bool = False


@dataclass(frozen=True)
class Limits:
    """Run budget; None means unlimited"""
    max_backtracks: Optional[int] = None
    max_nodes: Optional[int] = None

    def __post_init__(self):
        for label in ('max_backtracks', 'max_nodes'):
            value = getattr(self, label)
            if value is not None and value < 0:
                raise ConfigError(f"{label} must be non-negative, got {value}")


@dataclass(frozen=True)
class SearchState:
    """
    Read-only view of a run handed to event listeners.

    The partial solution and elimination sets are the engine's own objects;
    listeners must not modify them.
    """
    problem: Problem
    strategy: Strategy
    partial: PartialSolution
    sets: Dict[str, EliminationSet]
    stats: SearchStats


Listener = Callable[[TraceEvent, SearchState], None]
Step = Union[str, None, SearchOutcome]


class SearchEngine:
    """Runs one search; an engine instance is used once"""

    def __init__(self, problem: Problem, strategy: Strategy,
                 mechanism: Union[str, Mechanism, Callable] = 'basic',
                 heuristics: Optional[Heuristics] = None,
                 limits: Optional[Limits] = None,
                 on_event: Optional[Listener] = None,
                 debug: bool = False):
        self.problem = problem
        self.strategy = strategy
        self.mechanism = get_mechanism(mechanism)
        self.heuristics = heuristics or Heuristics()
        self.limits = limits or Limits()
        if strategy.requires_node_cap and self.limits.max_nodes is None:
            raise ConfigError(f"{strategy.name} may not terminate: a finite max_nodes is required")
        self.on_event = on_event
        self.debug = debug

        self.partial = PartialSolution(problem)
        self.sets: Dict[str, EliminationSet] = {
            name: EliminationSet.for_variable(problem, name) for name in problem.variables
        }
        self.stats = SearchStats()
        self.trace = SearchTrace()
        self.state = SearchState(problem, strategy, self.partial, self.sets, self.stats)
        self._orders = self.heuristics.value_orders(problem)
        self._footprints: Dict[str, Tuple[str, ...]] = {}
        self._cache: Dict[Tuple[str, Tuple[Optional[str], ...]], Tuple[Explanation, ...]] = {}
        self._space_bound = len(problem.variables) ** 2 * max(
            (len(d) for d in problem.domains.values()), default=0
        )

    # mechanism calls, cached per run

    def _eliminations(self, name: str) -> Tuple[Explanation, ...]:
        footprint = self._footprints.get(name)
        if footprint is None:
            footprint = self._footprints[name] = tuple(self.mechanism.footprint(self.problem, name))
        key = (name, tuple(self.partial.value_of(v) for v in footprint))
        cached = self._cache.get(key)
        if cached is None:
            produced = self.mechanism(self.problem, self.partial, name)
            if not self.strategy.explained:
                produced = [Explanation(e.value) for e in produced]
            cached = self._cache[key] = tuple(produced)
        return cached

    def _projection(self, name: str) -> FrozenSet[str]:
        """Values `name` would have eliminated if selected now"""
        fresh = frozenset(e.value for e in self._eliminations(name))
        if self.strategy.retain:
            return fresh | self.sets[name].eliminated()
        return fresh

    # events

    def _culprits(self, names: Iterable[str]) -> Tuple[str, ...]:
        return self.problem.sort_variables(names)

    def _emit(self, kind: EventKind, variable: Optional[str] = None, value: Optional[str] = None,
              culprits: Iterable[str] = (), cause: Optional[str] = None) -> None:
        event = TraceEvent(kind, variable, value, self._culprits(culprits), cause)
        self.trace.append(event)
        entries = total_entries(self.sets)
        if entries > self.stats.max_elimination_entries:
            self.stats.max_elimination_entries = entries
        if self.debug:
            self._check(event)
        if self.on_event is not None:
            self.on_event(event, self.state)

    def _check(self, event: TraceEvent) -> None:
        if event.kind is EventKind.DEADEND and not self.sets[event.variable].is_dead_end():
            raise InvariantViolation(f"dead end at '{event.variable}' with values left")
        owners = self.problem.variables if self.strategy.retain else list(self.partial.assigned)
        for owner in owners:
            for explanation in self.sets[owner]:
                stale = [n for n in explanation.culprits if n not in self.partial]
                if stale:
                    raise InvariantViolation(
                        f"after {event.to_line()!r}: {owner}≠{explanation.value} cites unbound {sorted(stale)}"
                    )
        if self.stats.max_elimination_entries > self._space_bound:
            raise InvariantViolation(
                f"{self.stats.max_elimination_entries} elimination entries exceed variables² x largest domain = {self._space_bound}"
            )
        if event.kind is EventKind.SOLVE and not is_solution(self.problem, self.partial.as_assignment()):
            raise InvariantViolation("reported solution violates a constraint")

    def _finish(self, status: Outcome) -> SearchOutcome:
        kind = {Outcome.SOLVED: EventKind.SOLVE, Outcome.UNSAT: EventKind.FAIL,
                Outcome.EXHAUSTED: EventKind.EXHAUSTED}[status]
        self._emit(kind)
        logger.info(
            "%s: %s after %d nodes, %d backtracks",
            self.strategy.name, status.value, self.stats.nodes_expanded, self.stats.backtracks,
        )
        assignment = self.partial.as_assignment() if status is Outcome.SOLVED else None
        return SearchOutcome(status, assignment, self.stats, self.trace)

    # steps

    def _select(self) -> str:
        projected = None
        if self.heuristics.needs_projection:
            projected = {name: self._projection(name) for name in self.partial.unassigned()}
        name = next_variable(self.heuristics, self.problem, self.partial, projected)
        self._prepare(name)
        return name

    def _prepare(self, name: str) -> None:
        elimination = self.sets[name]
        fresh = self._eliminations(name)
        if self.strategy.retain:
            changed = elimination.absorb(fresh)
        else:
            if len(elimination):
                elimination.clear()
                self._emit(EventKind.RESET, name)
            changed = elimination.absorb(fresh)
        for explanation in changed:
            self._emit(EventKind.ELIM, name, explanation.value, explanation.culprits)

    def _target(self, culprits: FrozenSet[str]) -> str:
        bindings: Sequence[Tuple[str, str]] = self.partial.bindings
        if not self.strategy.oldest:
            bindings = reversed(bindings)
        for name, _ in bindings:
            if name in culprits:
                return name
        raise InvariantViolation(f"no culprit of {sorted(culprits)} is bound")

    def _exceeded(self) -> bool:
        cap = self.limits.max_backtracks
        return cap is not None and self.stats.backtracks > cap

    def _backtrack(self, dead: str) -> Step:
        culprits = frozenset(self.sets[dead].culprit_union())
        strategy = self.strategy

        if strategy.pop is PopMode.CHRONOLOGICAL:
            if not len(self.partial):
                return self._finish(Outcome.UNSAT)
            target, value = self.partial.pop()
            self.stats.backtracks += 1
            blamed = culprits - {target} if strategy.explained else frozenset()
            self.sets[target].learn(Explanation(value, blamed, learned=True))
            self._emit(EventKind.BACKJUMP, target, value, blamed)
            following: Optional[str] = target

        else:
            if not culprits:
                return self._finish(Outcome.UNSAT)
            target = self._target(culprits)

            if strategy.pop is PopMode.SUFFIX:
                retracted: List[Tuple[str, str]] = []
                while self.partial.last()[0] != target:
                    retracted.append(self.partial.pop())
                _, value = self.partial.pop()
                self.stats.backtracks += len(retracted) + 1
                blamed = frozenset(n for n in culprits if n in self.partial)
                self.sets[target].learn(Explanation(value, blamed, learned=True))
                for name, old in retracted:
                    self._emit(EventKind.RETRACT, name, old)
                self._emit(EventKind.BACKJUMP, target, value, blamed)
                following = target

            else:
                value = self.partial.unbind(target)
                self.stats.backtracks += 1
                removed = prune_involving(self.sets, target, self.problem.variables)
                blamed = frozenset(n for n in culprits if n in self.partial)
                self.sets[target].learn(Explanation(value, blamed, learned=True))
                for owner, explanation in removed:
                    self._emit(EventKind.PRUNE, owner, explanation.value, cause=target)
                self._emit(EventKind.BACKJUMP, target, value, blamed)
                following = None
                if strategy.resume is Resume.REFRESH:
                    for explanation in self.sets[target].absorb(self._eliminations(target)):
                        self._emit(EventKind.ELIM, target, explanation.value, explanation.culprits)
                    following = target

        logger.debug("%s: dead end at %s, retreat to %s=%s", strategy.name, dead, target, value)
        if self._exceeded():
            return self._finish(Outcome.EXHAUSTED)
        return following

    def run(self) -> SearchOutcome:
        current: Optional[str] = None
        while True:
            if current is None:
                if self.partial.is_complete():
                    return self._finish(Outcome.SOLVED)
                current = self._select()

            value = choose_value(self._orders[current], self.sets[current])
            if value is not None:
                cap = self.limits.max_nodes
                if cap is not None and self.stats.nodes_expanded >= cap:
                    return self._finish(Outcome.EXHAUSTED)
                self.partial.bind(current, value)
                self.stats.nodes_expanded += 1
                self._emit(EventKind.ASSIGN, current, value)
                current = None
                continue

            self._emit(EventKind.DEADEND, current)
            step = self._backtrack(current)
            if isinstance(step, SearchOutcome):
                return step
            current = step

"""
Termination Monitor

Listens to a run's events and keeps every learned nogood, strengthened with
the bindings that preceded its variable, in a table over the node space
(each variable unbound or bound to one of its values). For the retaining
engines it checks after every step that:

  - every retained culprit is bound and no live explanation rules out a
    current binding;
  - each learned nogood excludes at least one node not excluded before
    (claim monotonicity/growth);
  - a nogood learned at a backjump has a context within, and entails, each
    nogood dropped in the same backjump (monotonicity/context and
    monotonicity/entailment);
  - a failed run ends with the whole search space excluded.

The resetting engines get the first check only.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from ..core import PartialSolution, Problem
from ..engines import EventKind, Heuristics, Limits, SearchState, TraceEvent, canonical_algorithm, get_algorithm
from ..engines.solvers import STRATEGIES
from ..errors import MonitorViolation, OracleGuardError
from ..explain import Mechanism
from .oracle import DEFAULT_MAX_SPACE

logger = logging.getLogger(__name__)

Literal = Tuple[str, str]


@dataclass(frozen=True)
class Nogood:
    """
    A learned or derived exclusion: the antecedent bindings rule out the consequent binding.

    The strengthened nogood forbids every node containing all of `literals`:
    the context bindings plus the consequent binding.
    """
    antecedent: Tuple[Literal, ...]
    consequent: Literal
    context: Tuple[Literal, ...]
    learned: bool = False
    event_index: int = 0

    def __post_init__(self):
        context = dict(self.context)
        for name, value in self.antecedent:
            if context.get(name) != value:
                raise MonitorViolation(self.event_index, 'strengthening',
                                       f"antecedent {name}={value} missing from the context")
        if self.consequent[0] in context:
            raise MonitorViolation(self.event_index, 'strengthening',
                                   f"consequent variable {self.consequent[0]} appears in its own context")

    @property
    def literals(self) -> Tuple[Literal, ...]:
        return self.context + (self.consequent,)

    @property
    def context_variables(self) -> frozenset:
        return frozenset(name for name, _ in self.context)

    def entails(self, other: 'Nogood') -> bool:
        """Whether every node `other` forbids is also forbidden by this nogood"""
        return set(self.literals) <= set(other.literals)


@dataclass
class MonitorReport:
    algorithm: str
    events: int = 0
    nogoods_added: int = 0
    excluded_final: int = 0
    violations: List[Dict] = field(default_factory=list)
    outcome: Optional[str] = None

    @property
    def certified(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {
            'events': self.events,
            'nogoods_added': self.nogoods_added,
            'excluded_final': self.excluded_final,
            'violations': list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class TerminationMonitor:
    """
    Event listener for one run; pass the instance as an engine's `on_event`.

    Violations are logged and raised as MonitorViolation, which aborts the run.
    """

    def __init__(self, problem: Problem, retaining: bool = True, max_space: int = DEFAULT_MAX_SPACE):
        self.problem = problem
        self.retaining = retaining
        self.shape = tuple(len(problem.domains[name]) + 1 for name in problem.variables)
        nodes = int(np.prod(self.shape, dtype=object)) if self.shape else 1
        if nodes > max_space:
            raise OracleGuardError(nodes, max_space)
        self.excluded = np.zeros(self.shape, dtype=bool)
        self.nogoods: List[Nogood] = []
        self.live: Dict[Literal, Nogood] = {}
        self.bindings = PartialSolution(problem)
        self.events = 0
        self._dropped: List[Nogood] = []
        self._last_dead_end: Optional[str] = None

    # node-space helpers

    def _region(self, literals) -> Tuple:
        bound = dict(literals)
        return tuple(
            self.problem.value_order[name][bound[name]] + 1 if name in bound else slice(None)
            for name in self.problem.variables
        )

    def excluded_nodes(self) -> int:
        return int(self.excluded.sum())

    def excluded_assignments(self) -> int:
        """Total assignments forbidden by the learned nogoods"""
        return int(self.excluded[(slice(1, None),) * len(self.shape)].sum())

    def _violation(self, claim: str, message: str) -> None:
        logger.warning("monitor: event %d: %s: %s", self.events, claim, message)
        raise MonitorViolation(self.events, claim, message)

    # event handling

    def __call__(self, event: TraceEvent, state: SearchState) -> None:
        self.events += 1
        handler = {
            EventKind.ASSIGN: self._on_assign,
            EventKind.ELIM: self._on_elim,
            EventKind.RESET: self._on_reset,
            EventKind.RETRACT: self._on_retract,
            EventKind.PRUNE: self._on_prune,
            EventKind.BACKJUMP: self._on_backjump,
            EventKind.DEADEND: self._on_dead_end,
            EventKind.FAIL: self._on_fail,
        }.get(event.kind)
        if handler is not None:
            handler(event, state)
        self._check_live(state)

    def _on_assign(self, event: TraceEvent, state: SearchState) -> None:
        self.bindings.bind(event.variable, event.value)
        self._dropped = []

    def _on_elim(self, event: TraceEvent, state: SearchState) -> None:
        values = self.bindings.values
        self.live[(event.variable, event.value)] = Nogood(
            antecedent=tuple((name, values[name]) for name in event.culprits),
            consequent=(event.variable, event.value),
            context=self.bindings.bindings,
            event_index=self.events,
        )

    def _on_reset(self, event: TraceEvent, state: SearchState) -> None:
        for key in [key for key in self.live if key[0] == event.variable]:
            del self.live[key]

    def _on_retract(self, event: TraceEvent, state: SearchState) -> None:
        self.bindings.unbind(event.variable)

    def _on_prune(self, event: TraceEvent, state: SearchState) -> None:
        dropped = self.live.pop((event.variable, event.value), None)
        if dropped is not None:
            self._dropped.append(dropped)

    def _on_dead_end(self, event: TraceEvent, state: SearchState) -> None:
        self._last_dead_end = event.variable

    def _on_backjump(self, event: TraceEvent, state: SearchState) -> None:
        target = event.variable
        values = self.bindings.values
        antecedent = tuple((name, values[name]) for name in event.culprits)
        prefix = self.bindings.prefix(target) if target in self.bindings else self.bindings.bindings
        context = tuple(dict.fromkeys(prefix + antecedent))
        if target in self.bindings:
            self.bindings.unbind(target)
        nogood = Nogood(antecedent, (target, event.value), context, learned=True, event_index=self.events)
        self.live[(target, event.value)] = nogood
        dropped, self._dropped = self._dropped, []
        if not self.retaining:
            return

        for old in dropped:
            if not nogood.context_variables <= old.context_variables:
                self._violation(
                    'monotonicity/context',
                    f"nogood for {target}≠{event.value} has context "
                    f"{{{','.join(self.problem.sort_variables(nogood.context_variables))}}} outside the dropped "
                    f"{old.consequent[0]}≠{old.consequent[1]} context "
                    f"{{{','.join(self.problem.sort_variables(old.context_variables))}}}",
                )
            if not nogood.entails(old):
                self._violation(
                    'monotonicity/entailment',
                    f"nogood for {target}≠{event.value} does not entail the dropped "
                    f"{old.consequent[0]}≠{old.consequent[1]}",
                )

        region = self._region(nogood.literals)
        if self.excluded[region].all():
            self._violation(
                'monotonicity/growth',
                f"nogood for {target}≠{event.value} excludes nothing new "
                f"({self.excluded_nodes()} nodes already excluded)",
            )
        self.excluded[region] = True
        self.nogoods.append(nogood)

    def _on_fail(self, event: TraceEvent, state: SearchState) -> None:
        if not self.retaining or self._last_dead_end is None:
            return
        dead = self._last_dead_end
        for explanation in state.sets[dead]:
            self.excluded[self._region(((dead, explanation.value),))] = True
        total = self.problem.search_space
        if self.excluded_assignments() != total:
            self._violation(
                'exhaustion',
                f"unsat reported with {self.excluded_assignments()} of {total} assignments excluded",
            )

    def _check_live(self, state: SearchState) -> None:
        partial = state.partial
        owners = self.problem.variables if self.retaining else list(partial.assigned)
        for owner in owners:
            current = partial.value_of(owner)
            for explanation in state.sets[owner]:
                if current is not None and explanation.value == current:
                    self._violation('consistency', f"{owner} is bound to {current}, which a live explanation rules out")
                stale = [name for name in explanation.culprits if name not in partial]
                if stale:
                    self._violation(
                        'liveness',
                        f"{owner}≠{explanation.value} cites unbound {','.join(self.problem.sort_variables(stale))}",
                    )


def monitor_run(problem: Problem, algorithm: str = 'dynamic',
                mechanism: Union[str, Mechanism, Callable] = 'basic',
                heuristics: Optional[Heuristics] = None, limits: Optional[Limits] = None,
                max_space: int = DEFAULT_MAX_SPACE) -> MonitorReport:
    """Run one engine under the monitor and report instead of raising"""
    name = canonical_algorithm(algorithm)
    monitor = TerminationMonitor(problem, STRATEGIES[name].retain, max_space)
    report = MonitorReport(name)
    try:
        outcome = get_algorithm(name)(problem, mechanism, heuristics, limits, on_event=monitor)
        report.outcome = outcome.status.value
    except MonitorViolation as violation:
        report.violations.append({
            'event': violation.event_index,
            'claim': violation.claim,
            'message': violation.message,
        })
    report.events = monitor.events
    report.nogoods_added = len(monitor.nogoods)
    report.excluded_final = monitor.excluded_assignments()
    return report

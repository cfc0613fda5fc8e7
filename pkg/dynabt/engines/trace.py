"""
Search Traces

Event records emitted by the engines, their tab-separated line format, run
counters and outcomes, and the folds that rebuild engine state from an event
stream (replay and elimination-table rendering).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import pandas as pd

from ..core import Assignment, PartialSolution, Problem
from ..errors import ProblemFormatError
from ..explain import EliminationSet, Explanation


class EventKind(str, Enum):
    ASSIGN = 'ASSIGN'
    ELIM = 'ELIM'
    DEADEND = 'DEADEND'
    BACKJUMP = 'BACKJUMP'
    PRUNE = 'PRUNE'
    RETRACT = 'RETRACT'
    RESET = 'RESET'
    SOLVE = 'SOLVE'
    FAIL = 'FAIL'
    EXHAUSTED = 'EXHAUSTED'


# Number of tab-separated fields after the kind
_ARITY = {
    EventKind.ASSIGN: 2,
    EventKind.ELIM: 3,
    EventKind.DEADEND: 1,
    EventKind.BACKJUMP: 3,
    EventKind.PRUNE: 3,
    EventKind.RETRACT: 2,
    EventKind.RESET: 1,
    EventKind.SOLVE: 0,
    EventKind.FAIL: 0,
    EventKind.EXHAUSTED: 0,
}

TERMINAL = frozenset({EventKind.SOLVE, EventKind.FAIL, EventKind.EXHAUSTED})


@dataclass(frozen=True)
class TraceEvent:
    """
    One engine step.

    `culprits` is kept in declaration order. PRUNE events carry the unbound
    variable that caused the removal in `cause`.
    """
    kind: EventKind
    variable: Optional[str] = None
    value: Optional[str] = None
    culprits: Tuple[str, ...] = ()
    cause: Optional[str] = None

    def to_line(self) -> str:
        fields: List[str] = [self.kind.value]
        if self.kind in (EventKind.DEADEND, EventKind.RESET):
            fields.append(self.variable)
        elif self.kind in (EventKind.ASSIGN, EventKind.RETRACT):
            fields += [self.variable, self.value]
        elif self.kind in (EventKind.ELIM, EventKind.BACKJUMP):
            fields += [self.variable, self.value, ','.join(self.culprits)]
        elif self.kind is EventKind.PRUNE:
            fields += [self.variable, self.value, self.cause]
        return '\t'.join(fields)

    @classmethod
    def from_line(cls, line: str, line_number: int = 1, path: Optional[str] = None) -> 'TraceEvent':
        parts = line.rstrip('\n').split('\t')
        try:
            kind = EventKind(parts[0])
        except ValueError:
            raise ProblemFormatError(f"unknown event kind '{parts[0]}'", path, line_number, 1) from None
        if len(parts) - 1 != _ARITY[kind]:
            raise ProblemFormatError(
                f"{kind.value} takes {_ARITY[kind]} fields, got {len(parts) - 1}", path, line_number, 1
            )
        if kind in (EventKind.DEADEND, EventKind.RESET):
            return cls(kind, parts[1])
        if kind in (EventKind.ASSIGN, EventKind.RETRACT):
            return cls(kind, parts[1], parts[2])
        if kind in (EventKind.ELIM, EventKind.BACKJUMP):
            culprits = tuple(c for c in parts[3].split(',') if c)
            return cls(kind, parts[1], parts[2], culprits)
        if kind is EventKind.PRUNE:
            return cls(kind, parts[1], parts[2], cause=parts[3])
        return cls(kind)


def parse_events(text: str, path: Optional[str] = None) -> List[TraceEvent]:
    """Parse the line format back into events; blank lines are skipped"""
    return [
        TraceEvent.from_line(line, number, path)
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip()
    ]


class SearchTrace:
    """Ordered event log of one run"""

    def __init__(self, events: Iterable[TraceEvent] = ()):
        self.events: List[TraceEvent] = list(events)

    def append(self, event: TraceEvent) -> None:
        self.events.append(event)

    def lines(self) -> List[str]:
        return [event.to_line() for event in self.events]

    def text(self) -> str:
        return ''.join(line + '\n' for line in self.lines())

    def count(self, kind: EventKind) -> int:
        return sum(1 for event in self.events if event.kind is kind)

    def __iter__(self) -> Iterator[TraceEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __getitem__(self, index):
        return self.events[index]


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    backtracks: int = 0
    max_elimination_entries: int = 0


class Outcome(str, Enum):
    SOLVED = 'Solved'
    UNSAT = 'Unsat'
    EXHAUSTED = 'Exhausted'

    @property
    def verdict(self) -> str:
        """Word printed by the command line"""
        return {'Solved': 'SAT', 'Unsat': 'UNSAT', 'Exhausted': 'EXHAUSTED'}[self.value]


@dataclass(frozen=True)
class SearchOutcome:
    status: Outcome
    assignment: Optional[Assignment] = None
    stats: SearchStats = field(default_factory=SearchStats)
    trace: SearchTrace = field(default_factory=SearchTrace)

    @property
    def solved(self) -> bool:
        return self.status is Outcome.SOLVED

    @property
    def unsat(self) -> bool:
        return self.status is Outcome.UNSAT

    @property
    def exhausted(self) -> bool:
        return self.status is Outcome.EXHAUSTED


class Replay:
    """
    Fold of an event stream into bindings and elimination sets.

    Applying every event of a run reproduces the engine's final partial
    solution and elimination sets.
    """

    def __init__(self, problem: Problem):
        self.problem = problem
        self.partial = PartialSolution(problem)
        self.sets: Dict[str, EliminationSet] = {
            name: EliminationSet.for_variable(problem, name) for name in problem.variables
        }

    def apply(self, event: TraceEvent) -> None:
        kind = event.kind
        if kind is EventKind.ASSIGN:
            self.partial.bind(event.variable, event.value)
        elif kind is EventKind.ELIM:
            self.sets[event.variable].install(Explanation.of(event.value, event.culprits))
        elif kind is EventKind.RESET:
            self.sets[event.variable].clear()
        elif kind is EventKind.RETRACT:
            self.partial.unbind(event.variable)
        elif kind is EventKind.PRUNE:
            self.sets[event.variable].discard(event.value)
        elif kind is EventKind.BACKJUMP:
            if event.variable in self.partial:
                self.partial.unbind(event.variable)
            self.sets[event.variable].learn(Explanation.of(event.value, event.culprits, learned=True))


def replay(problem: Problem, events: Iterable[TraceEvent]) -> Tuple[PartialSolution, Dict[str, EliminationSet]]:
    state = Replay(problem)
    for event in events:
        state.apply(event)
    return state.partial, state.sets


def render_table(problem: Problem, partial: PartialSolution, sets: Dict[str, EliminationSet]) -> str:
    """
    Elimination table: one row per variable, bound ones first in binding order.

    Each value column lists the culprits of that value's explanation,
    alphabetically; an explanation with no culprits shows as '{}'.
    """
    rows = [name for name, _ in partial.bindings] + list(partial.unassigned())
    columns = list(dict.fromkeys(v for name in problem.variables for v in problem.domains[name]))
    records = []
    for name in rows:
        record = {'variable': name, 'value': partial.value_of(name) or ''}
        for value in columns:
            explanation = sets[name].get(value)
            if explanation is None:
                record[value] = ''
            else:
                record[value] = ','.join(sorted(explanation.culprits)) or '{}'
        records.append(record)
    frame = pd.DataFrame(records, columns=['variable', 'value'] + columns)
    return frame.to_string(index=False)


def render_tables(problem: Problem, events: Iterable[TraceEvent]) -> List[str]:
    """A captioned table after every DEADEND and BACKJUMP event"""
    state = Replay(problem)
    tables = []
    for event in events:
        state.apply(event)
        if event.kind in (EventKind.DEADEND, EventKind.BACKJUMP):
            caption = '# after ' + ' '.join(event.to_line().split('\t')).rstrip()
            tables.append(caption + '\n' + render_table(problem, state.partial, state.sets))
    return tables

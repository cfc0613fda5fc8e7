"""
Search Engines

The backtracking procedures, their heuristics and their event traces.
"""

from .heuristics import Heuristics, ValueRule, VariableRule, choose_value, next_variable
from .skeleton import Limits, Listener, PopMode, Resume, SearchEngine, SearchState, Strategy
from .solvers import (
    ALGORITHMS,
    STRATEGIES,
    canonical_algorithm,
    get_algorithm,
    solve_backjump,
    solve_dfs,
    solve_dynamic,
    solve_dynamic_v1,
    solve_explained_dfs,
    solve_oldest_culprit,
)
from .trace import (
    EventKind,
    Outcome,
    Replay,
    SearchOutcome,
    SearchStats,
    SearchTrace,
    TraceEvent,
    parse_events,
    render_table,
    render_tables,
    replay,
)

__all__ = [
    "ALGORITHMS",
    "STRATEGIES",
    "EventKind",
    "Heuristics",
    "Limits",
    "Listener",
    "Outcome",
    "PopMode",
    "Replay",
    "Resume",
    "SearchEngine",
    "SearchOutcome",
    "SearchState",
    "SearchStats",
    "SearchTrace",
    "Strategy",
    "TraceEvent",
    "ValueRule",
    "VariableRule",
    "canonical_algorithm",
    "choose_value",
    "get_algorithm",
    "next_variable",
    "parse_events",
    "render_table",
    "render_tables",
    "replay",
    "solve_backjump",
    "solve_dfs",
    "solve_dynamic",
    "solve_dynamic_v1",
    "solve_explained_dfs",
    "solve_oldest_culprit",
]

"""
Solver entry points.

Each procedure is the shared skeleton under a fixed Strategy:

    dfs             values only, reset at selection, undo the last binding
    explained-dfs   as dfs, with culprits; the undone binding learns E - {j}
    backjump        undo the last culprit binding and everything after it
    dynamic-v1      undo the culprit binding only, refresh its explanations, continue with it
    dynamic         undo the culprit binding only, then select freely
    oldest-culprit  as dynamic, retreating to the earliest culprit binding
"""

from typing import Callable, Dict, Optional, Union

from ..core import Problem
from ..errors import ConfigError
from ..explain import Mechanism
from .heuristics import Heuristics
from .skeleton import Limits, Listener, PopMode, Resume, SearchEngine, Strategy
from .trace import SearchOutcome

MechanismLike = Union[str, Mechanism, Callable]

DFS = Strategy('dfs', explained=False, retain=False, pop=PopMode.CHRONOLOGICAL, resume=Resume.SAME)
EXPLAINED_DFS = Strategy('explained-dfs', explained=True, retain=False, pop=PopMode.CHRONOLOGICAL,
                         resume=Resume.SAME)
BACKJUMP = Strategy('backjump', explained=True, retain=False, pop=PopMode.SUFFIX, resume=Resume.SAME)
DYNAMIC_V1 = Strategy('dynamic-v1', explained=True, retain=True, pop=PopMode.SINGLE, resume=Resume.REFRESH)
DYNAMIC = Strategy('dynamic', explained=True, retain=True, pop=PopMode.SINGLE, resume=Resume.SELECT)
OLDEST_CULPRIT = Strategy('oldest-culprit', explained=True, retain=True, pop=PopMode.SINGLE,
                          resume=Resume.SELECT, oldest=True, requires_node_cap=True)

STRATEGIES: Dict[str, Strategy] = {
    s.name: s for s in (DFS, EXPLAINED_DFS, BACKJUMP, DYNAMIC_V1, DYNAMIC, OLDEST_CULPRIT)
}


def _solve(strategy: Strategy, problem: Problem, mechanism: MechanismLike,
           heuristics: Optional[Heuristics], limits: Optional[Limits],
           on_event: Optional[Listener], debug: bool) -> SearchOutcome:
    engine = SearchEngine(problem, strategy, mechanism, heuristics, limits, on_event, debug)
    return engine.run()


def solve_dfs(problem: Problem, mechanism: MechanismLike = 'basic', heuristics: Optional[Heuristics] = None,
              limits: Optional[Limits] = None, *, on_event: Optional[Listener] = None,
              debug: bool = False) -> SearchOutcome:
    """Depth-first search: eliminated values only, chronological backtracking"""
    return _solve(DFS, problem, mechanism, heuristics, limits, on_event, debug)


def solve_explained_dfs(problem: Problem, mechanism: MechanismLike = 'basic',
                        heuristics: Optional[Heuristics] = None, limits: Optional[Limits] = None, *,
                        on_event: Optional[Listener] = None, debug: bool = False) -> SearchOutcome:
    """Chronological backtracking that carries eliminating explanations"""
    return _solve(EXPLAINED_DFS, problem, mechanism, heuristics, limits, on_event, debug)


def solve_backjump(problem: Problem, mechanism: MechanismLike = 'basic', heuristics: Optional[Heuristics] = None,
                   limits: Optional[Limits] = None, *, on_event: Optional[Listener] = None,
                   debug: bool = False) -> SearchOutcome:
    """
    Backjumping.

    At a dead end with culprit union E, erase the latest binding of a variable
    in E together with every binding made after it. Unsat when E is empty.
    """
    return _solve(BACKJUMP, problem, mechanism, heuristics, limits, on_event, debug)


def solve_dynamic_v1(problem: Problem, mechanism: MechanismLike = 'basic',
                     heuristics: Optional[Heuristics] = None, limits: Optional[Limits] = None, *,
                     on_event: Optional[Listener] = None, debug: bool = False) -> SearchOutcome:
    """
    Dynamic backtracking, first form.

    Only the culprit binding is erased; later bindings and their live
    explanations stay. The retreated variable is refreshed from the mechanism and
    immediately given a new value.
    """
    return _solve(DYNAMIC_V1, problem, mechanism, heuristics, limits, on_event, debug)


def solve_dynamic(problem: Problem, mechanism: MechanismLike = 'basic', heuristics: Optional[Heuristics] = None,
                  limits: Optional[Limits] = None, *, on_event: Optional[Listener] = None,
                  debug: bool = False) -> SearchOutcome:
    """
    Dynamic backtracking.

    As dynamic-v1, except that after a retreat the variable rule picks the
    next variable afresh. Always terminates.
    """
    return _solve(DYNAMIC, problem, mechanism, heuristics, limits, on_event, debug)


def solve_oldest_culprit(problem: Problem, mechanism: MechanismLike = 'basic',
                         heuristics: Optional[Heuristics] = None, limits: Optional[Limits] = None, *,
                         on_event: Optional[Listener] = None, debug: bool = False) -> SearchOutcome:
    """
    Dynamic backtracking that retreats to the earliest culprit binding.

    Can cycle forever, so a finite node cap is mandatory (ConfigError otherwise).
    """
    return _solve(OLDEST_CULPRIT, problem, mechanism, heuristics, limits, on_event, debug)


ALGORITHMS: Dict[str, Callable[..., SearchOutcome]] = {
    'dfs': solve_dfs,
    'explained-dfs': solve_explained_dfs,
    'backjump': solve_backjump,
    'dynamic-v1': solve_dynamic_v1,
    'dynamic': solve_dynamic,
    'oldest-culprit': solve_oldest_culprit,
}


def canonical_algorithm(name: str) -> str:
    """Registry name for `name`; underscores are accepted in place of hyphens"""
    canonical = name.strip().lower().replace('_', '-')
    if canonical not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm '{name}' (choose from {', '.join(ALGORITHMS)})")
    return canonical


def get_algorithm(name: str) -> Callable[..., SearchOutcome]:
    return ALGORITHMS[canonical_algorithm(name)]

"""
Command base

The abstract command every CLI verb subclasses, plus the solver flags shared
by solve, trace and check.
"""

from abc import ABC, abstractmethod
from argparse import ArgumentParser, Namespace
from typing import Dict, List, Optional, Tuple

from ..core import Problem
from ..engines import ALGORITHMS, Heuristics, Limits, Outcome, SearchOutcome
from ..errors import ConfigError
from ..explain import MECHANISMS
from ..manager import SolverManager

EXIT_CODES = {
    Outcome.SOLVED: 0,
    Outcome.UNSAT: 1,
    Outcome.EXHAUSTED: 2,
}


class BaseCommand(ABC):
    """
    One CLI verb. Subclasses supply `name`, `help`, `add_arguments` and
    `execute`; `execute` returns the process exit code.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Command name (used in CLI)"""
        pass

    @property
    @abstractmethod
    def help(self) -> str:
        """Short help text for the command"""
        pass

    @abstractmethod
    def add_arguments(self, parser: ArgumentParser) -> None:
        """
        Add command-specific arguments to the argument parser.

        Args:
            parser: ArgumentParser for this command's subparser
        """
        pass

    @abstractmethod
    def execute(self, args: Namespace, manager: Optional[SolverManager]) -> int:
        """
        Execute the command.

        Args:
            args: Parsed command-line arguments
            manager: SolverManager instance (None for commands that don't need it)

        Returns:
            Exit code (0 for success, non-zero otherwise)
        """
        pass

    def requires_manager(self) -> bool:
        """Whether this command needs a SolverManager instance"""
        return True


def add_solver_arguments(parser: ArgumentParser, mechanism: bool = True) -> None:
    """Flags choosing the engine, its heuristics and its budget"""
    parser.add_argument('--algo', metavar='NAME',
                        help=f"Search algorithm ({', '.join(ALGORITHMS)}; default from config)")
    if mechanism:
        parser.add_argument('--mechanism', metavar='NAME',
                            help=f"Elimination mechanism ({', '.join(MECHANISMS)})")
    parser.add_argument('--var-rule', metavar='RULE', help='Variable rule (lexicographic, cheapest-first)')
    parser.add_argument('--val-rule', metavar='RULE',
                        help='Value rule (lexicographic, seeded-random, preferred)')
    parser.add_argument('--seed', type=int, help='Seed for the seeded-random value rule')
    parser.add_argument('--prefer', action='append', default=[], metavar='VAR=v1,v2',
                        help='Values to try first for VAR (repeatable)')
    parser.add_argument('--max-backtracks', type=int, metavar='N', help='Give up after N backtracks')
    parser.add_argument('--max-nodes', type=int, metavar='N', help='Give up after N assignments')
    parser.add_argument('--debug', action='store_true', help='Check engine invariants after every event')


def parse_preferences(entries: List[str]) -> Dict[str, Tuple[str, ...]]:
    preferences: Dict[str, Tuple[str, ...]] = {}
    for entry in entries:
        name, sep, values = entry.partition('=')
        if not sep or not name.strip() or not values.strip():
            raise ConfigError(f"--prefer expects VAR=v1,v2, got '{entry}'")
        preferences[name.strip()] = tuple(v.strip() for v in values.split(',') if v.strip())
    return preferences


def heuristics_from_args(args: Namespace, manager: SolverManager) -> Heuristics:
    return manager.heuristics(args.var_rule, args.val_rule, args.seed, parse_preferences(args.prefer))


def limits_from_args(args: Namespace, manager: SolverManager) -> Limits:
    return manager.limits(args.max_backtracks, args.max_nodes)


def solve_from_args(args: Namespace, manager: SolverManager, problem: Problem) -> SearchOutcome:
    return manager.solve(
        problem,
        algorithm=args.algo,
        mechanism=args.mechanism,
        heuristics=heuristics_from_args(args, manager),
        limits=limits_from_args(args, manager),
        debug=args.debug,
    )

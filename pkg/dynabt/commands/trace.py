"""Trace Command - Print the event trace of a run"""

import sys
from argparse import ArgumentParser, Namespace
from typing import Optional

from .base import EXIT_CODES, BaseCommand, add_solver_arguments, solve_from_args
from ..manager import SolverManager


class TraceCommand(BaseCommand):
    """Event lines, or an elimination table after every dead end and backjump"""

    @property
    def name(self) -> str:
        return 'trace'

    @property
    def help(self) -> str:
        return 'Print the search trace of a run'

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('problem', help='Problem JSON file')
        add_solver_arguments(parser)
        parser.add_argument('--format', choices=['events', 'tables'], default='events',
                            help='Tab-separated event lines (default) or elimination tables')

    def execute(self, args: Namespace, manager: Optional[SolverManager]) -> int:
        problem = manager.load(args.problem)
        outcome = solve_from_args(args, manager, problem)
        sys.stdout.write(manager.trace_text(problem, outcome.trace, args.format))
        return EXIT_CODES[outcome.status]

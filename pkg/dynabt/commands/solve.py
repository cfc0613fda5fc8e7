"""Solve Command - Run one engine on a problem file"""

from argparse import ArgumentParser, Namespace
from typing import Optional

from .base import EXIT_CODES, BaseCommand, add_solver_arguments, solve_from_args
from ..manager import SolverManager


class SolveCommand(BaseCommand):
    """Print SAT and the bindings, or UNSAT / EXHAUSTED"""

    @property
    def name(self) -> str:
        return 'solve'

    @property
    def help(self) -> str:
        return 'Solve a problem file'

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('problem', help='Problem JSON file')
        add_solver_arguments(parser)

    def execute(self, args: Namespace, manager: Optional[SolverManager]) -> int:
        problem = manager.load(args.problem)
        outcome = solve_from_args(args, manager, problem)
        print(outcome.status.verdict)
        if outcome.solved:
            for name in problem.variables:
                print(f"{name}={outcome.assignment[name]}")
        return EXIT_CODES[outcome.status]

"""Check Command - Mechanism contract or termination monitor"""

import json
from argparse import ArgumentParser, Namespace
from typing import Optional

from .base import BaseCommand, add_solver_arguments, heuristics_from_args, limits_from_args
from ..manager import SolverManager


class CheckCommand(BaseCommand):
    """
    Check a mechanism against the brute-force oracle (default), or run an
    engine under the termination monitor (--monitor). Exit 0 on pass.
    """

    @property
    def name(self) -> str:
        return 'check'

    @property
    def help(self) -> str:
        return 'Check a mechanism or certify a run against the oracle'

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('problem', help='Problem JSON file')
        parser.add_argument('--monitor', action='store_true',
                            help='Run --algo under the termination monitor instead of checking a mechanism')
        parser.add_argument('--json', action='store_true', help='Print the report as JSON')
        add_solver_arguments(parser)

    def execute(self, args: Namespace, manager: Optional[SolverManager]) -> int:
        problem = manager.load(args.problem)
        if args.monitor:
            return self._monitor(args, manager, problem)
        return self._mechanism(args, manager, problem)

    def _mechanism(self, args: Namespace, manager: SolverManager, problem) -> int:
        report = manager.check_mechanism(problem, args.mechanism)
        if args.json:
            print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
        elif report.passed:
            print(f"✓ mechanism {report.mechanism}: {report.partials_checked} partial solutions, "
                  f"{report.calls} calls, no counterexample")
        else:
            print(f"✗ mechanism {report.mechanism}: {report.counterexample.describe()}")
        return 0 if report.passed else 1

    def _monitor(self, args: Namespace, manager: SolverManager, problem) -> int:
        report = manager.monitor(
            problem,
            algorithm=args.algo,
            mechanism=args.mechanism,
            heuristics=heuristics_from_args(args, manager),
            limits=limits_from_args(args, manager),
        )
        if args.json:
            print(report.to_json())
        elif report.certified:
            print(f"✓ certified: {report.algorithm} ({report.outcome}), {report.events} events, "
                  f"{report.nogoods_added} nogoods, {report.excluded_final} assignments excluded")
        else:
            for violation in report.violations:
                print(f"✗ {report.algorithm}: event {violation['event']}: "
                      f"{violation['claim']}: {violation['message']}")
        return 0 if report.certified else 1

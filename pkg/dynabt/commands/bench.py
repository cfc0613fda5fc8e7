"""Bench Command - Run an experiment configuration"""

from argparse import ArgumentParser, Namespace
from typing import Optional

from .base import BaseCommand
from ..manager import SolverManager


class BenchCommand(BaseCommand):
    """Writes <name>-results.csv and <name>-summary.csv and prints both paths"""

    @property
    def name(self) -> str:
        return 'bench'

    @property
    def help(self) -> str:
        return 'Run an experiment sweep and write result CSVs'

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument('config_file', help='Experiment configuration (JSON)')
        parser.add_argument('--out-dir', help='Directory for the CSVs (default: bench.results_directory)')
        parser.add_argument('--jobs', type=int, help='Attempts run in parallel')

    def execute(self, args: Namespace, manager: Optional[SolverManager]) -> int:
        rows, results, summary = manager.run_bench(args.config_file, args.out_dir, args.jobs)
        print(results)
        print(summary)
        return 0

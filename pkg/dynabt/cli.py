#!/usr/bin/env python3
"""
dynabt - Command-Line Interface

Entry point for the dynabt solver: solve, trace, generate, check and
benchmark constraint problems.

Each verb is a BaseCommand subclass registered below.
"""

import argparse
import logging
import sys
import traceback
from typing import Dict, List, NoReturn, Optional, Tuple

from . import __version__
from .commands import (
    BaseCommand,
    BenchCommand,
    CheckCommand,
    ConfigCommand,
    GenCommand,
    SolveCommand,
    TraceCommand,
)
from .errors import ConfigError, OracleGuardError, ProblemError, ProblemFormatError
from .manager import DEFAULT_CONFIG_PATH, SolverManager

EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERRUPTED = 130


class DynabtArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 64 rather than argparse's 2 (2 means Exhausted here)"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def get_available_commands() -> List[BaseCommand]:
    """Command instances in the order they appear in --help"""
    return [
        SolveCommand(),
        TraceCommand(),
        GenCommand(),
        CheckCommand(),
        BenchCommand(),
        ConfigCommand(),
    ]


def register_commands(subparsers, commands: List[BaseCommand]) -> Dict[str, BaseCommand]:
    """Add one subparser per command; returns the commands keyed by name"""
    by_name: Dict[str, BaseCommand] = {}
    for command in commands:
        command.add_arguments(subparsers.add_parser(command.name, help=command.help))
        by_name[command.name] = command
    return by_name


def build_parser() -> Tuple[argparse.ArgumentParser, Dict[str, BaseCommand]]:
    parser = DynabtArgumentParser(
        prog='dynabt',
        description='dynabt - depth-first search, backjumping and dynamic backtracking for CSPs',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Solve and trace
  dynabt solve problem.json --algo dynamic
  dynabt solve xyz.json --algo oldest-culprit --max-nodes 100
  dynabt trace figure1.json --algo dynamic --prefer B=yellow --prefer C=blue --format tables

  # Generate problems
  dynabt gen figure1 --out figure1.json
  dynabt gen random --n 6 --d 3 --p1 0.5 --p2 0.4 --seed 42 --out random.json
  dynabt gen crossword --frame open-4x4 --out crossword.json

  # Verify
  dynabt check figure1.json --mechanism forward
  dynabt check xyz.json --monitor --algo dynamic

  # Experiments
  dynabt bench bench_configs/bench-crossword.json --jobs 4

  # App configuration
  dynabt config show
  dynabt config set solver.algorithm backjump

Exit codes: 0 solved/passed, 1 unsat/failed, 2 exhausted, 64 usage, 65 bad input.
        """
    )

    parser.add_argument(
        '--config', '-c',
        default=DEFAULT_CONFIG_PATH,
        metavar='PATH',
        help=f'Settings file (default: {DEFAULT_CONFIG_PATH})'
    )
    parser.add_argument(
        '--verbose', '-v',
        action='count',
        default=0,
        help='Log to stderr (-v info, -vv debug)'
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'%(prog)s {__version__}'
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # help command (special case, not part of command pattern)
    subparsers.add_parser('help', help='Show help message')

    command_map = register_commands(subparsers, get_available_commands())
    return parser, command_map


def _configure_logging(verbose: int, level: Optional[str] = None) -> None:
    if verbose >= 2:
        chosen = logging.DEBUG
    elif verbose == 1:
        chosen = logging.INFO
    else:
        chosen = getattr(logging, (level or 'WARNING').upper(), logging.WARNING)
    logging.basicConfig(stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s', force=True)
    logging.getLogger().setLevel(chosen)


def main(argv: Optional[List[str]] = None) -> NoReturn:
    """Parse `argv`, run the command and exit with its code"""
    parser, command_map = build_parser()
    args = parser.parse_args(argv)

    if not args.command or args.command == 'help':
        parser.print_help()
        sys.exit(0)

    _configure_logging(args.verbose)

    try:
        command = command_map[args.command]

        manager = None
        if command.requires_manager():
            manager = SolverManager(args.config)
            _configure_logging(args.verbose, manager.log_level)

        exit_code = command.execute(args, manager)
        sys.stdout.flush()
        sys.exit(exit_code)

    except KeyboardInterrupt:
        print("\n\nInterrupted by user. Goodbye!", file=sys.stderr)
        sys.exit(EXIT_INTERRUPTED)
    except ConfigError as e:
        print(f"✗ {e}", file=sys.stderr)
        sys.exit(EXIT_USAGE)
    except (ProblemFormatError, ProblemError, OracleGuardError) as e:
        print(f"✗ {e}", file=sys.stderr)
        sys.exit(EXIT_DATA)
    except FileNotFoundError as e:
        print(f"✗ {e.filename}: no such file", file=sys.stderr)
        sys.exit(EXIT_DATA)
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        traceback.print_exc()
        sys.exit(1)


if __name__ == '__main__':
    main()

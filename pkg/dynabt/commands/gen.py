"""Gen Command - Write a generated problem as canonical JSON"""

import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import List, Optional

from .base import BaseCommand
from ..core import Problem
from ..errors import ConfigError
from ..instances import (
    MapSpec,
    bundled_frame,
    bundled_frame_names,
    bundled_wordlist,
    crossword_csp,
    dumps_problem,
    figure1_instance,
    generate_frame,
    load_frame,
    load_wordlist,
    map_coloring,
    random_binary_csp,
    save_problem,
    shuffle_wordlist,
    xyz_unsat_instance,
)
from ..manager import SolverManager


def _names(raw: str) -> List[str]:
    return [part.strip() for part in raw.split(',') if part.strip()]


class GenCommand(BaseCommand):
    """Generate map, random, crossword or worked-example problems"""

    @property
    def name(self) -> str:
        return 'gen'

    @property
    def help(self) -> str:
        return 'Generate a problem file'

    def add_arguments(self, parser: ArgumentParser) -> None:
        kinds = parser.add_subparsers(dest='kind', help='Problem kind')

        map_parser = kinds.add_parser('map', help='Map coloring')
        map_parser.add_argument('--regions', required=True, help='Comma-separated region names')
        map_parser.add_argument('--borders', default='', help='Comma-separated borders, e.g. A-B,B-C')
        map_parser.add_argument('--colors', default='red,yellow,blue', help='Comma-separated colors')

        random_parser = kinds.add_parser('random', help='Random binary CSP')
        random_parser.add_argument('--n', type=int, required=True, help='Number of variables')
        random_parser.add_argument('--d', type=int, required=True, help='Domain size')
        random_parser.add_argument('--p1', type=float, required=True, help='Constraint density')
        random_parser.add_argument('--p2', type=float, required=True, help='Forbidden-pair fraction')
        random_parser.add_argument('--seed', type=int, help='Generator seed (default from config)')

        crossword_parser = kinds.add_parser('crossword', help='Crossword fill')
        crossword_parser.add_argument('--frame', help=f"Frame file or bundled frame ({', '.join(bundled_frame_names())})")
        crossword_parser.add_argument('--rows', type=int, help='Generate a frame with this many rows')
        crossword_parser.add_argument('--cols', type=int, help='Generate a frame with this many columns')
        crossword_parser.add_argument('--block-fraction', type=float, default=0.15,
                                      help='Blocked-cell probability for generated frames')
        crossword_parser.add_argument('--words', help='Wordlist file (default: bundled list)')
        crossword_parser.add_argument('--seed', type=int,
                                      help='Seed for the generated frame and the wordlist shuffle')
        crossword_parser.add_argument('--shuffle', action='store_true', help='Shuffle the wordlist first')
        crossword_parser.add_argument('--distinct-words', action='store_true',
                                      help='Forbid the same word in two slots')

        kinds.add_parser('xyz', help='Three-variable unsatisfiable example')
        kinds.add_parser('figure1', help='Five-country map coloring example')

        for sub in kinds.choices.values():
            sub.add_argument('--out', '-o', help='Output file (default: standard output)')

    def execute(self, args: Namespace, manager: Optional[SolverManager]) -> int:
        if not args.kind:
            raise ConfigError("gen needs a problem kind (map, random, crossword, xyz, figure1)")
        problem = getattr(self, f"_{args.kind}")(args, manager)
        if not args.out:
            sys.stdout.write(dumps_problem(problem))
            return 0
        path = save_problem(problem, args.out)
        print(f"✓ Wrote {path}: {len(problem.variables)} variables, {len(problem.constraints)} constraints")
        return 0

    def _map(self, args: Namespace, manager: SolverManager) -> Problem:
        borders = []
        for entry in _names(args.borders):
            first, sep, second = entry.partition('-')
            if not sep:
                raise ConfigError(f"border must look like A-B, got '{entry}'")
            borders.append((first.strip(), second.strip()))
        spec = MapSpec(tuple(_names(args.regions)), tuple(borders), tuple(_names(args.colors)))
        problems = spec.validate()
        if problems:
            raise ConfigError("invalid map: " + "; ".join(problems))
        return map_coloring(spec)

    def _random(self, args: Namespace, manager: SolverManager) -> Problem:
        seed = manager.seed if args.seed is None else args.seed
        return random_binary_csp(args.n, args.d, args.p1, args.p2, seed)

    def _crossword(self, args: Namespace, manager: SolverManager) -> Problem:
        seed = manager.seed if args.seed is None else args.seed
        if args.frame:
            frame = load_frame(args.frame) if Path(args.frame).exists() else bundled_frame(args.frame)
        elif args.rows and args.cols:
            frame = generate_frame(args.rows, args.cols, seed, args.block_fraction)
        else:
            raise ConfigError("crossword needs --frame or both --rows and --cols")
        words = load_wordlist(args.words) if args.words else bundled_wordlist()
        if args.shuffle:
            words = shuffle_wordlist(words, seed)
        return crossword_csp(frame, words, args.distinct_words)

    def _xyz(self, args: Namespace, manager: SolverManager) -> Problem:
        return xyz_unsat_instance()

    def _figure1(self, args: Namespace, manager: SolverManager) -> Problem:
        return figure1_instance()

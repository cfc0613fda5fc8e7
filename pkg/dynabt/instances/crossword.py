"""
Crossword Fill

Frames of open ('.') and blocked ('#') cells, their word slots, wordlists, and
the slot-per-variable CSP in which every crossing cell is one binary
constraint.
"""

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core import Constraint, Problem
from ..errors import ConfigError, ProblemFormatError

logger = logging.getLogger(__name__)

OPEN = '.'
BLOCKED = '#'

Cell = Tuple[int, int]

_WORD = re.compile(r'^[a-z]+$')


@dataclass(frozen=True)
class Slot:
    name: str
    cells: Tuple[Cell, ...]

    @property
    def length(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class Crossing:
    """Cell shared by an across slot (at across_index) and a down slot (at down_index)"""
    cell: Cell
    across: str
    across_index: int
    down: str
    down_index: int


@dataclass(frozen=True)
class CrosswordFrame:
    rows: Tuple[str, ...]

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def is_open(self, row: int, col: int) -> bool:
        return 0 <= row < self.height and 0 <= col < self.width and self.rows[row][col] == OPEN

    @cached_property
    def slots(self) -> Tuple[Slot, ...]:
        """Maximal open runs of length >= 2: across slots first, each group in row-major order of its start"""
        across: List[Slot] = []
        down: List[Slot] = []
        for row in range(self.height):
            for col in range(self.width):
                if not self.is_open(row, col):
                    continue
                if not self.is_open(row, col - 1) and self.is_open(row, col + 1):
                    cells = []
                    c = col
                    while self.is_open(row, c):
                        cells.append((row, c))
                        c += 1
                    across.append(Slot(f"across-r{row}c{col}", tuple(cells)))
                if not self.is_open(row - 1, col) and self.is_open(row + 1, col):
                    cells = []
                    r = row
                    while self.is_open(r, col):
                        cells.append((r, col))
                        r += 1
                    down.append(Slot(f"down-r{row}c{col}", tuple(cells)))
        return tuple(across + down)

    @cached_property
    def crossings(self) -> Tuple[Crossing, ...]:
        """Cells lying in both an across and a down slot, row-major"""
        across_at: Dict[Cell, Tuple[str, int]] = {}
        down_at: Dict[Cell, Tuple[str, int]] = {}
        for slot in self.slots:
            target = across_at if slot.name.startswith('across') else down_at
            for index, cell in enumerate(slot.cells):
                target[cell] = (slot.name, index)
        result = []
        for cell in sorted(set(across_at) & set(down_at)):
            (a_name, a_index), (d_name, d_index) = across_at[cell], down_at[cell]
            result.append(Crossing(cell, a_name, a_index, d_name, d_index))
        return tuple(result)

    def orphan_cells(self) -> List[Cell]:
        """Open cells belonging to no slot"""
        return [
            (row, col)
            for row in range(self.height) for col in range(self.width)
            if self.is_open(row, col)
            and not (self.is_open(row, col - 1) or self.is_open(row, col + 1))
            and not (self.is_open(row - 1, col) or self.is_open(row + 1, col))
        ]

    def to_text(self) -> str:
        return ''.join(row + '\n' for row in self.rows)


def parse_frame(text: str, path: Optional[str] = None) -> CrosswordFrame:
    rows = [line.rstrip('\r') for line in text.split('\n')]
    while rows and not rows[-1]:
        rows.pop()
    if not rows:
        raise ProblemFormatError("empty frame", path)
    width = len(rows[0])
    for number, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ProblemFormatError(f"frame is not rectangular (expected {width} cells)", path, number, 1)
        for column, char in enumerate(row, start=1):
            if char not in (OPEN, BLOCKED):
                raise ProblemFormatError(f"unexpected character {char!r}", path, number, column)
    frame = CrosswordFrame(tuple(rows))
    orphans = frame.orphan_cells()
    if orphans:
        row, col = orphans[0]
        raise ProblemFormatError("open cell belongs to no slot", path, row + 1, col + 1)
    return frame


def load_frame(path: Union[str, Path]) -> CrosswordFrame:
    path = Path(path)
    return parse_frame(path.read_text(encoding='utf-8'), str(path))


def generate_frame(rows: int, cols: int, seed: int, block_fraction: float = 0.15) -> CrosswordFrame:
    """
    Random dense frame.

    Each cell is blocked with probability block_fraction, then open cells left
    outside every slot are blocked too.
    """
    if rows < 2 or cols < 2:
        raise ConfigError(f"frames need at least 2x2 cells (got {rows}x{cols})")
    if not 0.0 <= block_fraction < 1.0:
        raise ConfigError(f"block_fraction must lie in [0, 1), got {block_fraction}")
    rng = np.random.default_rng(seed)
    blocked = rng.random((rows, cols)) < block_fraction
    grid = [''.join(BLOCKED if blocked[r, c] else OPEN for c in range(cols)) for r in range(rows)]
    frame = CrosswordFrame(tuple(grid))
    orphans = set(frame.orphan_cells())
    if orphans:
        grid = [
            ''.join(BLOCKED if (r, c) in orphans else grid[r][c] for c in range(cols))
            for r in range(rows)
        ]
        frame = CrosswordFrame(tuple(grid))
    return frame


def validate_wordlist(words: Sequence[str], path: Optional[str] = None) -> None:
    if not words:
        raise ProblemFormatError("wordlist is empty", path)
    for number, word in enumerate(words, start=1):
        if not _WORD.match(word):
            raise ProblemFormatError(f"word {word!r} is not lowercase a-z", path, number, 1)


def parse_wordlist(text: str, path: Optional[str] = None) -> List[str]:
    words = [line.strip() for line in text.splitlines() if line.strip()]
    validate_wordlist(words, path)
    return words


def load_wordlist(path: Union[str, Path]) -> List[str]:
    path = Path(path)
    return parse_wordlist(path.read_text(encoding='utf-8'), str(path))


def bundled_wordlist() -> List[str]:
    """The packaged wordlist (lengths 2 to 13, alphabetical)"""
    text = resources.files('dynabt').joinpath('data', 'words.txt').read_text(encoding='utf-8')
    return parse_wordlist(text, 'dynabt/data/words.txt')


def bundled_frame_names() -> List[str]:
    """Stems of the packaged sample frames, sorted"""
    folder = resources.files('dynabt').joinpath('data', 'frames')
    return sorted(entry.name[:-4] for entry in folder.iterdir() if entry.name.endswith('.txt'))


def bundled_frame(name: str) -> CrosswordFrame:
    if name not in bundled_frame_names():
        raise ConfigError(f"no bundled frame '{name}' (choose from {', '.join(bundled_frame_names())})")
    text = resources.files('dynabt').joinpath('data', 'frames', f"{name}.txt").read_text(encoding='utf-8')
    return parse_frame(text, f"dynabt/data/frames/{name}.txt")


def shuffle_wordlist(words: Sequence[str], seed: int) -> List[str]:
    """Deterministic permutation of `words` under `seed`"""
    order = np.random.default_rng(seed).permutation(len(words))
    return [words[k] for k in order]


def crossword_csp(frame: CrosswordFrame, words: Iterable[str], distinct_words: bool = False) -> Problem:
    """
    One variable per slot, whose domain is the words of its length in list order.

    Each crossing cell gives a constraint on (across, down) allowing the word
    pairs that agree on the shared letter. With distinct_words, every pair
    of equal-length slots also gets an inequality.
    """
    by_length: Dict[int, List[str]] = defaultdict(list)
    for word in dict.fromkeys(words):
        by_length[len(word)].append(word)

    slots = {slot.name: slot for slot in frame.slots}
    domains = [(slot.name, tuple(by_length.get(slot.length, ()))) for slot in frame.slots]
    domain_of = dict(domains)

    constraints: List[Constraint] = []
    for crossing in frame.crossings:
        downs_by_letter: Dict[str, List[str]] = defaultdict(list)
        for word in domain_of[crossing.down]:
            downs_by_letter[word[crossing.down_index]].append(word)
        allowed = [
            (across, down)
            for across in domain_of[crossing.across]
            for down in downs_by_letter.get(across[crossing.across_index], ())
        ]
        constraints.append(Constraint.extensional((crossing.across, crossing.down), allowed))

    if distinct_words:
        for first, second in combinations(frame.slots, 2):
            if first.length == second.length:
                constraints.append(Constraint.neq(first.name, second.name))

    empty = unfillable_slots_of(domains)
    if empty:
        logger.warning("unfillable slot(s): %s", ', '.join(empty))
    logger.debug("crossword: %d slots, %d constraints", len(slots), len(constraints))
    return Problem.build(domains, constraints)


def unfillable_slots_of(domains: Iterable[Tuple[str, Sequence[str]]]) -> List[str]:
    return [name for name, domain in domains if not domain]


def unfillable_slots(problem: Problem) -> List[str]:
    """Slots with no candidate word"""
    return unfillable_slots_of((name, problem.domains[name]) for name in problem.variables)

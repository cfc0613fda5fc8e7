"""
Experiment Harness

Runs the selected algorithms on a family of instances, several seeded
attempts per instance, every algorithm seeing the same instance within an
attempt. Rows are sorted before they are written, so the CSV bytes depend
only on the configuration.
"""

import hashlib
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from ..core import Problem
from ..engines import STRATEGIES, Heuristics, Limits, canonical_algorithm, get_algorithm
from ..errors import ConfigError, DynabtError, ProblemFormatError
from ..explain import get_mechanism
from ..instances import (
    bundled_frame,
    bundled_frame_names,
    bundled_wordlist,
    crossword_csp,
    figure1_instance,
    generate_frame,
    load_frame,
    load_problem,
    load_wordlist,
    random_binary_csp,
    shuffle_wordlist,
    xyz_unsat_instance,
)
from ..instances.crossword import CrosswordFrame

logger = logging.getLogger(__name__)

SOURCES = ('random', 'crossword', 'files', 'figure1', 'xyz')

RESULT_COLUMNS = ['instance', 'algorithm', 'attempt', 'outcome', 'nodes', 'backtracks', 'micros']
SUMMARY_COLUMNS = ['instance', 'algorithm', 'successes', 'attempts', 'mean_backtracks']


def derive_seed(*parts: Any) -> int:
    """First eight bytes, big-endian, of BLAKE2b over the parts joined with ':'"""
    text = ':'.join(str(part) for part in parts)
    return int.from_bytes(hashlib.blake2b(text.encode('utf-8')).digest()[:8], 'big')


def attempt_seed(base_seed: int, instance: str, attempt: int) -> int:
    return derive_seed(base_seed, instance, attempt)


@dataclass
class ExperimentConfig:
    """
    One sweep. Loaded from a flat JSON object whose keys are these fields.

    Sources:
      random     `instances` problems from random_binary_csp(n, d, p1, p2);
                 regenerated per attempt when `regenerate` is set
      crossword  `frames` (paths or bundled frame names) plus one generated
                 frame per `frame_sizes` entry; the wordlist is reshuffled
                 for every attempt
      files      problem files listed in `files`
      figure1, xyz  the two worked examples
    """
    name: str = 'experiment'
    source: str = 'random'
    algorithms: List[str] = field(default_factory=lambda: ['dynamic', 'backjump'])
    mechanism: str = 'basic'
    variable_rule: str = 'lexicographic'
    value_rule: str = 'lexicographic'
    attempts: int = 1
    max_backtracks: Optional[int] = 1000
    max_nodes: Optional[int] = 1_000_000
    base_seed: int = 0
    jobs: int = 1
    record_wall_time: bool = False

    instances: int = 1
    n: int = 8
    d: int = 3
    p1: float = 0.5
    p2: float = 0.3
    regenerate: bool = False

    frames: List[str] = field(default_factory=list)
    frame_sizes: List[List[int]] = field(default_factory=list)
    block_fraction: float = 0.15
    wordlist: Optional[str] = None
    distinct_words: bool = False

    files: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.source not in SOURCES:
            raise ConfigError(f"unknown source '{self.source}' (choose from {', '.join(SOURCES)})")
        if not self.algorithms:
            raise ConfigError("no algorithms selected")
        self.algorithms = [canonical_algorithm(name) for name in self.algorithms]
        get_mechanism(self.mechanism)
        Heuristics.from_names(self.variable_rule, self.value_rule)
        if self.attempts < 1:
            raise ConfigError(f"attempts must be at least 1, got {self.attempts}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")
        Limits(self.max_backtracks, self.max_nodes)
        for algorithm in self.algorithms:
            if STRATEGIES[algorithm].requires_node_cap and self.max_nodes is None:
                raise ConfigError(f"{algorithm} needs a finite max_nodes")
        if self.source == 'random' and self.instances < 1:
            raise ConfigError(f"instances must be at least 1, got {self.instances}")
        if self.source == 'crossword' and not (self.frames or self.frame_sizes):
            raise ConfigError("crossword sweeps need 'frames' or 'frame_sizes'")
        if self.source == 'files' and not self.files:
            raise ConfigError("file sweeps need 'files'")
        for size in self.frame_sizes:
            if len(size) != 2:
                raise ConfigError(f"frame size must be [rows, cols], got {size}")

    @property
    def limits(self) -> Limits:
        return Limits(self.max_backtracks, self.max_nodes)

    @classmethod
    def from_dict(cls, data: Any, path: Optional[str] = None) -> 'ExperimentConfig':
        if not isinstance(data, dict):
            raise ProblemFormatError("experiment configuration must be a JSON object", path)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ProblemFormatError(f"unknown field '{unknown[0]}' in experiment configuration", path)
        try:
            return cls(**data)
        except TypeError as e:
            raise ProblemFormatError(f"malformed experiment configuration: {e}", path) from None

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def load_experiment_config(path: Union[str, Path], defaults: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Read a configuration file; `defaults` fill fields the file leaves out"""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise ProblemFormatError(e.msg, str(path), e.lineno, e.colno) from None
    if isinstance(data, dict):
        data = {**(defaults or {}), 'name': path.stem, **data}
    return ExperimentConfig.from_dict(data, str(path))


@dataclass(frozen=True)
class ResultRow:
    instance: str
    algorithm: str
    attempt: int
    outcome: str
    nodes: int
    backtracks: int
    micros: int = 0

    @property
    def key(self) -> Tuple[str, str, int]:
        return (self.instance, self.algorithm, self.attempt)


@dataclass(frozen=True)
class SummaryRow:
    instance: str
    algorithm: str
    successes: int
    attempts: int
    mean_backtracks: Optional[float]


# Instance sources: each yields (instance id, builder), the builder taking
# the attempt seed and returning the problem that attempt runs on.

InstanceBuilder = Callable[[int], Problem]


def _random_sources(config: ExperimentConfig) -> List[Tuple[str, InstanceBuilder]]:
    width = len(str(config.instances - 1))
    sources = []
    for k in range(config.instances):
        instance = f"random-{k:0{width}d}"
        fixed_seed = derive_seed(config.base_seed, instance)

        def build(seed: int, fixed_seed: int = fixed_seed) -> Problem:
            chosen = seed if config.regenerate else fixed_seed
            return random_binary_csp(config.n, config.d, config.p1, config.p2, chosen)

        sources.append((instance, build))
    return sources


def _frame_from_entry(entry: str) -> Tuple[str, CrosswordFrame]:
    path = Path(entry)
    if path.exists():
        return path.stem, load_frame(path)
    if entry in bundled_frame_names():
        return entry, bundled_frame(entry)
    raise ConfigError(f"frame '{entry}' is neither a file nor a bundled frame")


def _crossword_sources(config: ExperimentConfig) -> List[Tuple[str, InstanceBuilder]]:
    words = load_wordlist(config.wordlist) if config.wordlist else bundled_wordlist()
    frames = [_frame_from_entry(entry) for entry in config.frames]
    for index, (rows, cols) in enumerate(config.frame_sizes):
        instance = f"frame-{index:02d}-{rows}x{cols}"
        frames.append((instance, generate_frame(rows, cols, derive_seed(config.base_seed, instance),
                                                config.block_fraction)))

    sources = []
    for instance, frame in frames:
        def build(seed: int, frame: CrosswordFrame = frame) -> Problem:
            return crossword_csp(frame, shuffle_wordlist(words, seed), config.distinct_words)
        sources.append((instance, build))
    return sources


def _file_sources(config: ExperimentConfig) -> List[Tuple[str, InstanceBuilder]]:
    sources = []
    for entry in config.files:
        problem = load_problem(entry)
        sources.append((Path(entry).stem, lambda seed, problem=problem: problem))
    return sources


def instance_sources(config: ExperimentConfig) -> List[Tuple[str, InstanceBuilder]]:
    if config.source == 'random':
        return _random_sources(config)
    if config.source == 'crossword':
        return _crossword_sources(config)
    if config.source == 'files':
        return _file_sources(config)
    if config.source == 'figure1':
        problem = figure1_instance()
        return [('figure1', lambda seed: problem)]
    problem = xyz_unsat_instance()
    return [('xyz', lambda seed: problem)]


def _run_attempt(config: ExperimentConfig, instance: str, build: InstanceBuilder,
                 attempt: int) -> List[ResultRow]:
    seed = attempt_seed(config.base_seed, instance, attempt)
    problem = build(seed)
    heuristics = Heuristics.from_names(config.variable_rule, config.value_rule, seed)
    rows = []
    for algorithm in config.algorithms:
        started = time.perf_counter()
        try:
            outcome = get_algorithm(algorithm)(problem, config.mechanism, heuristics, config.limits)
        except DynabtError as e:
            logger.error("%s attempt %d, %s failed: %s", instance, attempt, algorithm, e)
            raise
        micros = int((time.perf_counter() - started) * 1e6) if config.record_wall_time else 0
        rows.append(ResultRow(
            instance, algorithm, attempt, outcome.status.value,
            outcome.stats.nodes_expanded, outcome.stats.backtracks, micros,
        ))
    logger.info("%s attempt %d: %s", instance, attempt,
                ', '.join(f"{row.algorithm}={row.outcome}/{row.backtracks}" for row in rows))
    return rows


def run_experiment(config: ExperimentConfig) -> List[ResultRow]:
    """One row per (instance, algorithm, attempt), sorted by that key"""
    sources = instance_sources(config)
    jobs = [(instance, build, attempt) for instance, build in sources for attempt in range(config.attempts)]
    logger.info("experiment %s: %d instance(s) x %d attempt(s) x %d algorithm(s)",
                config.name, len(sources), config.attempts, len(config.algorithms))

    rows: List[ResultRow] = []
    if config.jobs == 1:
        for instance, build, attempt in jobs:
            rows.extend(_run_attempt(config, instance, build, attempt))
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(_run_attempt, config, instance, build, attempt)
                       for instance, build, attempt in jobs]
            for future in futures:
                rows.extend(future.result())
    return sorted(rows, key=lambda row: row.key)


def summarize(rows: Sequence[ResultRow]) -> List[SummaryRow]:
    """
    Success count and mean backtracks over the solved attempts, per
    (instance, algorithm). The mean is None when nothing was solved.
    """
    if not rows:
        return []
    frame = results_frame(rows)
    frame['solved'] = frame['outcome'] == 'Solved'
    summary = []
    for (instance, algorithm), group in frame.groupby(['instance', 'algorithm'], sort=True):
        solved = group[group['solved']]
        mean = float(solved['backtracks'].mean()) if len(solved) else None
        summary.append(SummaryRow(instance, algorithm, int(len(solved)), int(len(group)), mean))
    return summary


def results_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    return pd.DataFrame([[getattr(row, column) for column in RESULT_COLUMNS] for row in rows],
                        columns=RESULT_COLUMNS)


def summary_frame(summary: Sequence[SummaryRow]) -> pd.DataFrame:
    return pd.DataFrame([[getattr(row, column) for column in SUMMARY_COLUMNS] for row in summary],
                        columns=SUMMARY_COLUMNS)


def write_results(rows: Sequence[ResultRow], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    results_frame(rows).to_csv(path, index=False, encoding='utf-8', lineterminator='\n')
    return path


def write_summary(summary: Sequence[SummaryRow], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    summary_frame(summary).to_csv(path, index=False, encoding='utf-8', lineterminator='\n', na_rep='')
    return path


def write_experiment(config: ExperimentConfig, rows: Sequence[ResultRow],
                     out_dir: Union[str, Path]) -> Tuple[Path, Path]:
    """`<name>-results.csv` and `<name>-summary.csv` under out_dir"""
    out_dir = Path(out_dir)
    results = write_results(rows, out_dir / f"{config.name}-results.csv")
    summary = write_summary(summarize(rows), out_dir / f"{config.name}-summary.csv")
    return results, summary

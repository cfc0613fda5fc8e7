#!/usr/bin/env python3
"""
Solver Manager

Application-level entry point: loads settings, turns them (and command-line
overrides) into heuristics and limits, and runs solves, traces, checks and
experiment sweeps.
"""

import copy
import json
import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from dotenv import load_dotenv

from .core import Problem
from .engines import (
    STRATEGIES,
    Heuristics,
    Limits,
    SearchOutcome,
    SearchTrace,
    canonical_algorithm,
    get_algorithm,
    render_tables,
)
from .errors import ConfigError
from .explain import get_mechanism
from .harness import ExperimentConfig, ResultRow, load_experiment_config, run_experiment, write_experiment
from .instances import load_problem
from .verify import MechanismReport, MonitorReport, check_mechanism, monitor_run

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "settings/default_config.json"

DEFAULT_CONFIG: Dict[str, Any] = {
    'solver': {
        'algorithm': 'dynamic',
        'mechanism': 'basic',
        'variable_rule': 'lexicographic',
        'value_rule': 'lexicographic',
        'seed': '${DYNABT_SEED}',
        'max_backtracks': None,
        'max_nodes': None,
        'debug': False,
    },
    'oracle': {
        'max_space': 10_000_000,
    },
    'bench': {
        'max_backtracks': 1000,
        'max_nodes': 1_000_000,
        'jobs': 1,
        'results_directory': 'results',
    },
    'logging': {
        'level': 'WARNING',
    },
}

_ENV_REFERENCE = re.compile(r'\$\{([^}]+)\}')


def parse_seed(raw: Any) -> int:
    """Seed from configuration or DYNABT_SEED; empty means 0"""
    if raw is None or (isinstance(raw, str) and not raw.strip()):
        return 0
    if isinstance(raw, bool):
        raise ConfigError(f"malformed seed {raw!r}")
    try:
        seed = int(raw.strip()) if isinstance(raw, str) else int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"malformed seed {raw!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _merge_defaults(defaults: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(defaults)
    for key, value in loaded.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge_defaults(merged[key], value)
        else:
            merged[key] = value
    return merged


class SolverManager:
    """
    Main manager class that orchestrates solver operations.

    Settings come from a JSON file (built-in defaults when it is missing),
    with `${VAR}` references resolved after `.env` is loaded. DYNABT_SEED,
    when set, replaces the configured seed.
    """

    def __init__(self, config_path: Union[str, Path] = DEFAULT_CONFIG_PATH):
        self.config_path = Path(config_path)
        self.config = self._load_config()
        self.seed = parse_seed(self.config['solver'].get('seed'))

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file and environment"""
        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
        except FileNotFoundError:
            logger.debug("no configuration at %s, using built-in defaults", self.config_path)
            loaded = {}
        except json.JSONDecodeError as e:
            raise ConfigError(f"{self.config_path}:{e.lineno}:{e.colno}: {e.msg}") from None
        if not isinstance(loaded, dict):
            raise ConfigError(f"{self.config_path}: configuration must be a JSON object")

        load_dotenv()
        config = self._resolve_env_vars(_merge_defaults(DEFAULT_CONFIG, loaded))

        env_seed = os.getenv('DYNABT_SEED')
        if env_seed is not None and env_seed.strip():
            config['solver']['seed'] = env_seed
        return config

    def _resolve_env_vars(self, config: Any) -> Any:
        """Recursively resolve environment variable references (${VAR_NAME})"""
        if isinstance(config, str):
            return _ENV_REFERENCE.sub(lambda match: os.getenv(match.group(1), ''), config)
        if isinstance(config, dict):
            return {key: self._resolve_env_vars(value) for key, value in config.items()}
        if isinstance(config, list):
            return [self._resolve_env_vars(item) for item in config]
        return config

    def get_config(self) -> Dict[str, Any]:
        return copy.deepcopy(self.config)

    def get(self, key: str) -> Any:
        value: Any = self.config
        for part in key.split('.'):
            if not isinstance(value, dict) or part not in value:
                raise ConfigError(f"configuration key not found: {key}")
            value = value[part]
        return value

    @property
    def log_level(self) -> str:
        return str(self.config['logging'].get('level', 'WARNING')).upper()

    @property
    def max_space(self) -> int:
        return int(self.config['oracle']['max_space'])

    # run settings: explicit arguments win over configuration

    def algorithm(self, override: Optional[str] = None) -> str:
        return canonical_algorithm(override or self.config['solver']['algorithm'])

    def mechanism(self, override: Optional[str] = None) -> str:
        name = override or self.config['solver']['mechanism']
        return get_mechanism(name).name

    def heuristics(self, variable_rule: Optional[str] = None, value_rule: Optional[str] = None,
                   seed: Optional[int] = None,
                   preferences: Optional[Mapping[str, Tuple[str, ...]]] = None) -> Heuristics:
        solver = self.config['solver']
        return Heuristics.from_names(
            variable_rule or solver['variable_rule'],
            value_rule or solver['value_rule'],
            self.seed if seed is None else parse_seed(seed),
            preferences,
        )

    def limits(self, max_backtracks: Optional[int] = None, max_nodes: Optional[int] = None) -> Limits:
        solver = self.config['solver']
        return Limits(
            solver['max_backtracks'] if max_backtracks is None else max_backtracks,
            solver['max_nodes'] if max_nodes is None else max_nodes,
        )

    def debug(self, override: bool = False) -> bool:
        return bool(override or self.config['solver'].get('debug', False))

    # operations

    def load(self, path: Union[str, Path]) -> Problem:
        return load_problem(path)

    def solve(self, problem: Problem, algorithm: Optional[str] = None, mechanism: Optional[str] = None,
              heuristics: Optional[Heuristics] = None, limits: Optional[Limits] = None,
              debug: bool = False) -> SearchOutcome:
        name = self.algorithm(algorithm)
        limits = limits or self.limits()
        if STRATEGIES[name].requires_node_cap and limits.max_nodes is None:
            raise ConfigError(f"{name} needs a finite node cap (--max-nodes)")
        solve = get_algorithm(name)
        outcome = solve(problem, self.mechanism(mechanism), heuristics or self.heuristics(), limits,
                        debug=self.debug(debug))
        logger.info("%s: %s after %d nodes, %d backtracks", name, outcome.status.value,
                    outcome.stats.nodes_expanded, outcome.stats.backtracks)
        return outcome

    def trace_text(self, problem: Problem, trace: SearchTrace, format: str = 'events') -> str:
        if format == 'events':
            return trace.text()
        if format == 'tables':
            tables = render_tables(problem, trace)
            return '\n\n'.join(tables) + '\n' if tables else ''
        raise ConfigError(f"unknown trace format '{format}' (choose from events, tables)")

    def check_mechanism(self, problem: Problem, mechanism: Optional[str] = None) -> MechanismReport:
        return check_mechanism(self.mechanism(mechanism), problem, self.max_space, seed=self.seed)

    def monitor(self, problem: Problem, algorithm: Optional[str] = None, mechanism: Optional[str] = None,
                heuristics: Optional[Heuristics] = None, limits: Optional[Limits] = None) -> MonitorReport:
        name = self.algorithm(algorithm)
        limits = limits or self.limits()
        if STRATEGIES[name].requires_node_cap and limits.max_nodes is None:
            limits = Limits(limits.max_backtracks, self.config['bench']['max_nodes'])
        return monitor_run(problem, name, self.mechanism(mechanism), heuristics or self.heuristics(),
                           limits, self.max_space)

    def experiment_config(self, path: Union[str, Path], jobs: Optional[int] = None) -> ExperimentConfig:
        bench = self.config['bench']
        defaults = {key: bench[key] for key in ('max_backtracks', 'max_nodes', 'jobs') if key in bench}
        if jobs is not None:
            defaults['jobs'] = jobs
        config = load_experiment_config(path, defaults)
        if jobs is not None:
            config.jobs = jobs
            config.validate()
        return config

    def run_bench(self, path: Union[str, Path], out_dir: Optional[Union[str, Path]] = None,
                  jobs: Optional[int] = None) -> Tuple[List[ResultRow], Path, Path]:
        config = self.experiment_config(path, jobs)
        rows = run_experiment(config)
        out_dir = Path(out_dir or self.config['bench']['results_directory'])
        results, summary = write_experiment(config, rows, out_dir)
        return rows, results, summary

"""Seeded sweeps over random instances; run with `pytest -m slow`"""

import itertools

import numpy as np
import pytest

from dynabt.core import is_solution
from dynabt.engines import ALGORITHMS, STRATEGIES, Heuristics, Outcome, get_algorithm, solve_backjump, solve_dfs
from dynabt.instances import random_binary_csp
from dynabt.verify import brute_force, check_mechanism, monitor_run, satisfies

pytestmark = pytest.mark.slow

TERMINATING = [name for name in ALGORITHMS if not STRATEGIES[name].requires_node_cap]
DENSITIES = (0.2, 0.5, 0.8)


def sweep(count):
    """(n, d, p1, p2, seed) tuples cycling through sizes and densities"""
    shapes = itertools.cycle(itertools.product(range(2, 9), range(2, 5), DENSITIES, DENSITIES))
    for seed, (n, d, p1, p2) in zip(range(count), shapes):
        yield n, d, p1, p2, seed


def test_verdicts_match_the_oracle():
    for n, d, p1, p2, seed in sweep(1000):
        problem = random_binary_csp(n, d, p1, p2, seed)
        satisfiable = bool(brute_force(problem))
        for algorithm in TERMINATING:
            outcome = get_algorithm(algorithm)(problem)
            assert outcome.status is (Outcome.SOLVED if satisfiable else Outcome.UNSAT), (algorithm, seed)
            if outcome.solved:
                assert is_solution(problem, outcome.assignment)


@pytest.mark.parametrize('mechanism', ['basic', 'forward'])
def test_verdicts_match_with_cheapest_first(mechanism):
    heuristics = Heuristics.from_names('cheapest-first', 'seeded-random', seed=13)
    for n, d, p1, p2, seed in sweep(200):
        problem = random_binary_csp(n, d, p1, p2, seed)
        satisfiable = bool(brute_force(problem))
        for algorithm in TERMINATING:
            outcome = get_algorithm(algorithm)(problem, mechanism, heuristics)
            assert outcome.solved == satisfiable, (algorithm, seed)


def test_backjump_never_expands_more_nodes_than_dfs():
    for n, d, p1, p2, seed in sweep(300):
        problem = random_binary_csp(n, d, p1, p2, seed)
        assert solve_backjump(problem).stats.nodes_expanded <= solve_dfs(problem).stats.nodes_expanded


def test_invariants_hold_in_debug_mode():
    for n, d, p1, p2, seed in sweep(200):
        problem = random_binary_csp(n, d, p1, p2, seed)
        for algorithm in TERMINATING:
            outcome = get_algorithm(algorithm)(problem, 'forward', debug=True)
            bound = len(problem.variables) ** 2 * d
            assert outcome.stats.max_elimination_entries <= bound


@pytest.mark.parametrize('algorithm', ['dynamic-v1', 'dynamic'])
def test_retaining_engines_are_certified(algorithm):
    for n, d, p1, p2, seed in sweep(150):
        problem = random_binary_csp(min(n, 6), d, p1, p2, seed)
        report = monitor_run(problem, algorithm)
        assert report.certified, (seed, report.violations)
        if report.outcome == 'Unsat':
            assert report.excluded_final == problem.search_space


def test_oracle_checker_agrees_with_the_core_checker_on_random_assignments():
    rng = np.random.default_rng(2024)
    checked = 0
    for n, d, p1, p2, seed in sweep(1000):
        problem = random_binary_csp(n, d, p1, p2, seed)
        for _ in range(100):
            assignment = {name: problem.domains[name][int(rng.integers(d))] for name in problem.variables}
            assert satisfies(problem, assignment) == is_solution(problem, assignment), (seed, assignment)
            checked += 1
    assert checked == 100_000


@pytest.mark.parametrize('mechanism', ['basic', 'forward'])
def test_shipped_mechanisms_meet_the_contract_on_small_instances(mechanism):
    shapes = itertools.cycle(itertools.product(range(2, 6), range(1, 4), DENSITIES, DENSITIES))
    for seed, (n, d, p1, p2) in zip(range(100), shapes):
        problem = random_binary_csp(n, d, p1, p2, seed)
        report = check_mechanism(mechanism, problem)
        assert report.passed, (seed, report.counterexample.describe())
        assert report.calls > 0

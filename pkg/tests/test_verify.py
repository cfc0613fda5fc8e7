import json

import pytest

from dynabt.core import Constraint, PartialSolution, Problem, is_solution
from dynabt.engines import Limits, solve_dynamic
from dynabt.errors import MonitorViolation, OracleGuardError, ProblemError
from dynabt.explain import MECHANISMS, Explanation
from dynabt.instances import random_binary_csp
from dynabt.verify import (
    Nogood,
    TerminationMonitor,
    brute_force,
    check_mechanism,
    check_space,
    consistent,
    extends,
    monitor_run,
    satisfies,
    solution_space,
)


def test_brute_force_lists_solutions_in_order():
    problem = Problem.build([('a', ('0', '1')), ('b', ('0', '1'))], [Constraint.neq('a', 'b')])
    assert brute_force(problem) == [{'a': '0', 'b': '1'}, {'a': '1', 'b': '0'}]


def test_oracle_guard():
    problem = random_binary_csp(8, 4, 0.0, 0.0, 0)
    assert check_space(problem) == 4 ** 8
    with pytest.raises(OracleGuardError) as caught:
        brute_force(problem, max_space=1000)
    assert caught.value.size == 65536


def test_extends_and_consistent(figure1):
    space = solution_space(figure1)
    assert extends(figure1, space, {'A': 'red', 'B': 'red'})
    assert not extends(figure1, space, {'A': 'red', 'B': 'yellow'})
    assert consistent(figure1, {'A': 'red', 'B': 'yellow', 'D': 'blue'})
    assert not consistent(figure1, {'A': 'red', 'C': 'red'})


def test_satisfies_requires_total_assignments(figure1):
    with pytest.raises(ProblemError):
        satisfies(figure1, {'A': 'red'})


def test_oracle_checker_agrees_with_the_core_checker():
    problem = random_binary_csp(5, 3, 0.7, 0.4, 8)
    for solution in brute_force(problem):
        assert is_solution(problem, solution)
    count = 0
    values = problem.domains['v0']
    for a in values:
        for b in values:
            for c in values:
                assignment = {'v0': a, 'v1': b, 'v2': c, 'v3': a, 'v4': b}
                assert satisfies(problem, assignment) == is_solution(problem, assignment)
                count += 1
    assert count == 27


@pytest.mark.parametrize('mechanism', ['basic', 'forward'])
def test_shipped_mechanisms_pass_on_the_worked_examples(mechanism, figure1, xyz):
    for problem in (figure1, xyz):
        report = check_mechanism(mechanism, problem)
        assert report.passed, report.counterexample.describe()
        assert report.calls > 0


@pytest.mark.parametrize('mechanism', ['basic', 'forward'])
def test_shipped_mechanisms_pass_on_sampled_random_instances(mechanism):
    problem = random_binary_csp(7, 3, 0.5, 0.3, 21)
    report = check_mechanism(mechanism, problem, samples=300, seed=4)
    assert report.passed, report.counterexample.describe()


def test_blame_everything_is_sound_but_verbose(figure1):
    assert check_mechanism('blame-everything', figure1).passed
    partial = PartialSolution(figure1, [('A', 'red'), ('B', 'yellow'), ('C', 'blue')])
    found = MECHANISMS['blame-everything'](figure1, partial, 'D')
    assert all(e.culprits == {'A', 'B', 'C'} for e in found)


def test_check_mechanism_reports_wrong_eliminations(figure1):
    def eliminate_red(problem, partial, name):
        return [Explanation.of('red', partial.assigned)] if len(partial) else []

    report = check_mechanism(eliminate_red, figure1)
    assert not report.passed
    assert report.counterexample.property in ('correctness', 'extendable')
    assert json.loads(json.dumps(report.to_dict()))['passed'] is False


def test_check_mechanism_flags_self_citation(figure1):
    def cite_self(problem, partial, name):
        return [Explanation(problem.domains[name][0], frozenset({name}))]

    report = check_mechanism(cite_self, figure1)
    assert report.counterexample.property == 'culprits'


def test_walkthrough_is_certified(figure1, walkthrough):
    report = monitor_run(figure1, 'dynamic', 'basic', walkthrough)
    assert report.certified
    assert report.outcome == 'Solved'
    assert report.nogoods_added == 2


def test_xyz_failure_excludes_the_whole_space(xyz):
    report = monitor_run(xyz, 'dynamic')
    assert report.certified, report.violations
    assert report.outcome == 'Unsat'
    assert report.nogoods_added == 6
    assert report.excluded_final == 8


def test_xyz_learned_nogoods(xyz):
    monitor = TerminationMonitor(xyz)
    solve_dynamic(xyz, on_event=monitor)
    learned = [frozenset(nogood.literals) for nogood in monitor.nogoods]
    assert learned == [
        frozenset({('x', '0'), ('y', '0')}),
        frozenset({('x', '0'), ('y', '1')}),
        frozenset({('x', '0')}),
        frozenset({('x', '1'), ('y', '0')}),
        frozenset({('x', '1'), ('y', '1')}),
        frozenset({('x', '1')}),
    ]


@pytest.mark.parametrize('algorithm', ['dfs', 'explained-dfs', 'backjump'])
def test_resetting_engines_only_get_the_live_check(algorithm, xyz):
    report = monitor_run(xyz, algorithm)
    assert report.certified
    assert report.excluded_final == 0


def test_oldest_culprit_breaks_monotonicity_when_a_nogood_is_dropped(xyz):
    report = monitor_run(xyz, 'oldest-culprit', limits=Limits(max_nodes=100))
    assert not report.certified
    violation = report.violations[0]
    assert violation['claim'] == 'monotonicity/context'
    assert report.outcome is None


def test_monitor_guard(figure1):
    with pytest.raises(OracleGuardError):
        TerminationMonitor(figure1, max_space=100)


def test_nogood_strengthening_rules():
    with pytest.raises(MonitorViolation):
        Nogood(antecedent=(('a', '0'),), consequent=('b', '1'), context=(('c', '0'),))
    with pytest.raises(MonitorViolation):
        Nogood(antecedent=(), consequent=('b', '1'), context=(('b', '0'),))
    broad = Nogood((('a', '0'),), ('b', '1'), (('a', '0'),))
    narrow = Nogood((('a', '0'),), ('c', '1'), (('a', '0'), ('b', '1')))
    assert broad.entails(narrow)
    assert not narrow.entails(broad)


def test_counterexample_description(figure1):
    def cite_self(problem, partial, name):
        return [Explanation(problem.domains[name][0], frozenset({name}))]

    text = check_mechanism(cite_self, figure1).counterexample.describe()
    assert text.startswith('culprits: bindings=[none], variable=A, value=red')

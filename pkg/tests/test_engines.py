import pytest

from dynabt.core import PartialSolution, is_solution
from dynabt.engines import (
    ALGORITHMS,
    STRATEGIES,
    EventKind,
    Heuristics,
    Limits,
    Outcome,
    SearchEngine,
    canonical_algorithm,
    choose_value,
    get_algorithm,
    next_variable,
    replay,
    solve_backjump,
    solve_dfs,
    solve_dynamic,
    solve_oldest_culprit,
)
from dynabt.errors import ConfigError
from dynabt.instances import random_binary_csp

TERMINATING = [name for name in ALGORITHMS if not STRATEGIES[name].requires_node_cap]


def test_lexicographic_dynamic_colors_the_map_without_backtracking(figure1):
    outcome = solve_dynamic(figure1)
    assert outcome.status is Outcome.SOLVED
    assert outcome.assignment == {'A': 'red', 'B': 'red', 'C': 'yellow', 'D': 'yellow', 'E': 'blue'}
    assert outcome.stats.backtracks == 0
    assert outcome.stats.nodes_expanded == 5


@pytest.mark.parametrize('algorithm', TERMINATING)
def test_every_engine_solves_the_walkthrough(algorithm, figure1, walkthrough):
    outcome = get_algorithm(algorithm)(figure1, 'basic', walkthrough, debug=True)
    assert outcome.solved
    assert is_solution(figure1, outcome.assignment)
    assert outcome.trace[-1].kind is EventKind.SOLVE


@pytest.mark.parametrize('algorithm', TERMINATING)
def test_xyz_is_unsat_after_six_backtracks(algorithm, xyz):
    outcome = get_algorithm(algorithm)(xyz, debug=True)
    assert outcome.status is Outcome.UNSAT
    assert outcome.assignment is None
    assert outcome.stats.backtracks == 6
    assert outcome.stats.nodes_expanded == 6
    assert outcome.trace[-1].kind is EventKind.FAIL


def test_backjump_retracts_the_bindings_it_jumps_over(figure1, walkthrough):
    outcome = solve_backjump(figure1, 'basic', walkthrough)
    lines = outcome.trace.lines()
    assert outcome.solved
    assert outcome.stats.backtracks == 3
    jump = lines.index('BACKJUMP\tB\tyellow\tA')
    assert lines[jump - 1] == 'RETRACT\tC\tblue'
    assert 'RESET\tC' in lines[jump:]


def test_dfs_forgets_explanations(xyz):
    outcome = solve_dfs(xyz)
    jumps = [event for event in outcome.trace if event.kind is EventKind.BACKJUMP]
    assert jumps and all(event.culprits == () for event in jumps)


def test_oldest_culprit_needs_a_node_cap(xyz):
    with pytest.raises(ConfigError):
        solve_oldest_culprit(xyz)


def test_oldest_culprit_cycles_until_the_node_cap(xyz):
    outcome = solve_oldest_culprit(xyz, limits=Limits(max_nodes=100), debug=True)
    assert outcome.status is Outcome.EXHAUSTED
    assert outcome.stats.nodes_expanded == 100
    assigns = [(e.variable, e.value) for e in outcome.trace if e.kind is EventKind.ASSIGN]
    assert assigns[:6] == [('x', '0'), ('y', '0'), ('x', '1'), ('y', '1'), ('x', '0'), ('y', '0')]
    first_jump = next(e for e in outcome.trace if e.kind is EventKind.BACKJUMP)
    assert first_jump.to_line() == 'BACKJUMP\tx\t0\ty'


def test_node_cap_is_checked_before_each_assignment(xyz):
    outcome = solve_dynamic(xyz, limits=Limits(max_nodes=3))
    assert outcome.status is Outcome.EXHAUSTED
    assert outcome.stats.nodes_expanded == 3
    assert outcome.trace[-1].kind is EventKind.EXHAUSTED


def test_backtrack_cap_stops_after_the_excess_retreat(xyz):
    outcome = solve_dfs(xyz, limits=Limits(max_backtracks=2))
    assert outcome.status is Outcome.EXHAUSTED
    assert outcome.stats.backtracks == 3


def test_backtrack_cap_equal_to_the_need_still_finishes(xyz):
    assert solve_dfs(xyz, limits=Limits(max_backtracks=6)).status is Outcome.UNSAT


def test_limits_reject_negative_caps():
    with pytest.raises(ConfigError):
        Limits(max_nodes=-1)


@pytest.mark.parametrize('algorithm', ['dfs', 'backjump', 'dynamic-v1', 'dynamic'])
def test_replay_rebuilds_engine_state(algorithm, figure1, walkthrough):
    engine = SearchEngine(figure1, STRATEGIES[algorithm], 'forward', walkthrough)
    outcome = engine.run()
    partial, sets = replay(figure1, outcome.trace)
    assert partial == engine.partial
    assert sets == engine.sets


def test_listener_sees_every_event(figure1):
    seen = []
    outcome = solve_dynamic(figure1, on_event=lambda event, state: seen.append(event))
    assert seen == list(outcome.trace)


@pytest.mark.parametrize('raw, expected', [
    ('dynamic_v1', 'dynamic-v1'),
    (' Backjump ', 'backjump'),
    ('oldest_culprit', 'oldest-culprit'),
])
def test_canonical_algorithm(raw, expected):
    assert canonical_algorithm(raw) == expected


def test_unknown_algorithm_is_a_config_error():
    with pytest.raises(ConfigError):
        get_algorithm('forward-jump')


def test_seeded_random_orders_are_reproducible(figure1):
    first = Heuristics.from_names(value_rule='seeded-random', seed=11).value_orders(figure1)
    second = Heuristics.from_names(value_rule='seeded-random', seed=11).value_orders(figure1)
    assert first == second
    assert all(sorted(order) == sorted(figure1.domains[name]) for name, order in first.items())


def test_preferences_switch_on_the_preferred_rule(figure1, walkthrough):
    orders = walkthrough.value_orders(figure1)
    assert orders['B'] == ('yellow', 'red', 'blue')
    assert orders['A'] == ('red', 'yellow', 'blue')


@pytest.mark.parametrize('preferences', [{'Z': ('red',)}, {'A': ('green',)}])
def test_bad_preferences_are_config_errors(preferences, figure1):
    with pytest.raises(ConfigError):
        Heuristics.from_names(preferences=preferences).value_orders(figure1)


@pytest.mark.parametrize('kwargs', [{'variable_rule': 'random'}, {'value_rule': 'largest'}, {'seed': -1}])
def test_bad_heuristic_names(kwargs):
    with pytest.raises(ConfigError):
        Heuristics.from_names(**kwargs)


def test_cheapest_first_picks_the_tightest_variable(figure1):
    heuristics = Heuristics.from_names(variable_rule='cheapest-first')
    partial = PartialSolution(figure1, [('A', 'red')])
    eliminated = {'B': set(), 'C': {'red'}, 'D': {'red'}, 'E': {'red', 'yellow'}}
    assert next_variable(heuristics, figure1, partial, eliminated) == 'E'
    assert next_variable(Heuristics(), figure1, partial, eliminated) == 'B'


def test_choose_value():
    assert choose_value(('b', 'a', 'c'), {'b'}) == 'a'
    assert choose_value(('a',), {'a'}) is None


def test_cheapest_first_with_forward_checking_solves_random_instances():
    heuristics = Heuristics.from_names('cheapest-first', 'seeded-random', seed=3)
    for seed in range(5):
        problem = random_binary_csp(8, 3, 0.5, 0.3, seed)
        for algorithm in TERMINATING:
            outcome = get_algorithm(algorithm)(problem, 'forward', heuristics, debug=True)
            assert outcome.status is not Outcome.EXHAUSTED
            if outcome.solved:
                assert is_solution(problem, outcome.assignment)

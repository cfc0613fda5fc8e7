from itertools import product

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from dynabt.core import Constraint, PartialSolution, Problem, first_violation
from dynabt.errors import ConfigError
from dynabt.explain import (
    EliminationSet,
    Explanation,
    MECHANISMS,
    Mechanism,
    blame_everything,
    culprit_union,
    eliminate_basic,
    eliminate_forward,
    get_mechanism,
    merge,
    prune_involving,
)
from dynabt.instances import bundled_frame, crossword_csp, parse_frame, random_binary_csp

COLORS = ('red', 'yellow', 'blue')


def colors(*entries):
    return EliminationSet('E', COLORS, [Explanation.of(value, culprits) for value, culprits in entries])


def test_merge_fills_missing_values():
    merged = merge(colors(('red', 'A')), [Explanation.of('blue', 'D')])
    assert merged.as_dict() == {'red': {'A'}, 'blue': {'D'}}


def test_merge_prefers_smaller_culprit_sets_and_keeps_ties():
    existing = colors(('red', 'AB'), ('yellow', 'C'))
    merged = merge(existing, [Explanation.of('red', 'D'), Explanation.of('yellow', 'D')])
    assert merged.as_dict() == {'red': {'D'}, 'yellow': {'C'}}
    assert existing.as_dict() == {'red': {'A', 'B'}, 'yellow': {'C'}}


def test_learned_entries_follow_the_merge_rule():
    elimination = colors(('red', 'AB'))
    elimination.learn(Explanation.of('yellow', 'ABC'))
    elimination.learn(Explanation.of('blue', 'AB'))
    changed = elimination.absorb([
        Explanation.of('yellow', 'A'),
        Explanation.of('red', 'A'),
        Explanation.of('blue', 'CD'),
    ])
    assert [e.value for e in changed] == ['red', 'yellow']
    assert elimination.get('yellow').culprits == {'A'}
    assert not elimination.get('yellow').learned
    assert elimination.get('blue').culprits == {'A', 'B'}
    assert elimination.get('blue').learned


def test_install_rejects_self_citation_and_foreign_values():
    elimination = colors()
    with pytest.raises(ValueError):
        elimination.install(Explanation.of('red', 'E'))
    with pytest.raises(ValueError):
        elimination.install(Explanation.of('green', 'A'))


def test_dead_end_and_culprit_union():
    elimination = colors(('red', 'A'), ('yellow', 'B'))
    assert not elimination.is_dead_end()
    assert elimination.remaining() == ['blue']
    elimination.install(Explanation.of('blue', 'D'))
    assert elimination.is_dead_end()
    assert culprit_union(elimination) == {'A', 'B', 'D'}


def test_prune_involving_visits_sets_in_order():
    sets = {
        'D': EliminationSet('D', COLORS, [Explanation.of('red', 'A'), Explanation.of('yellow', 'B')]),
        'E': EliminationSet('E', COLORS, [Explanation.of('yellow', 'B'), Explanation.of('blue', 'BD')]),
    }
    removed = prune_involving(sets, 'B', ['D', 'E'])
    assert [(owner, e.value) for owner, e in removed] == [('D', 'yellow'), ('E', 'yellow'), ('E', 'blue')]
    assert sets['D'].as_dict() == {'red': {'A'}}
    assert len(sets['E']) == 0


def test_equality_ignores_the_learned_flag():
    learned = colors()
    learned.learn(Explanation.of('red', 'A'))
    assert learned == colors(('red', 'A'))


explanation_sets = st.lists(
    st.tuples(st.sampled_from(COLORS), st.sets(st.sampled_from('ABCD'), max_size=3)),
    max_size=6,
)


@given(explanation_sets, explanation_sets)
def test_merge_is_idempotent(first, second):
    base = colors()
    base.absorb(Explanation.of(v, c) for v, c in first)
    fresh = [Explanation.of(v, c) for v, c in second]
    once = merge(base, fresh)
    assert merge(once, fresh) == once


@given(explanation_sets, explanation_sets)
def test_merge_never_grows_a_culprit_set(first, second):
    base = colors()
    base.absorb(Explanation.of(v, c) for v, c in first)
    merged = merge(base, [Explanation.of(v, c) for v, c in second])
    for explanation in base:
        assert len(merged.get(explanation.value).culprits) <= len(explanation.culprits)


def test_basic_blames_the_neighbor_holding_the_color(figure1):
    partial = PartialSolution(figure1, [('A', 'red'), ('B', 'yellow'), ('C', 'blue'), ('D', 'blue')])
    found = eliminate_basic(figure1, partial, 'E')
    assert [(e.value, set(e.culprits)) for e in found] == [
        ('red', {'A'}), ('yellow', {'B'}), ('blue', {'D'}),
    ]


def test_basic_cites_the_whole_assigned_scope(xyz):
    partial = PartialSolution(xyz, [('x', '0'), ('y', '1')])
    found = eliminate_basic(xyz, partial, 'z')
    assert [(e.value, set(e.culprits)) for e in found] == [('0', {'x', 'y'}), ('1', {'x', 'y'})]
    assert eliminate_basic(xyz, PartialSolution(xyz, [('x', '0')]), 'z') == []


def test_blame_everything_cites_every_binding(figure1):
    partial = PartialSolution(figure1, [('A', 'red'), ('B', 'yellow'), ('C', 'blue')])
    found = blame_everything(figure1, partial, 'D')
    assert [(e.value, set(e.culprits)) for e in found] == [
        ('red', {'A', 'B', 'C'}), ('yellow', {'A', 'B', 'C'}),
    ]


def test_forward_checking_eliminates_values_that_wipe_out_a_neighbor(figure1):
    partial = PartialSolution(figure1, [('A', 'red'), ('B', 'yellow')])
    basic = eliminate_basic(figure1, partial, 'D')
    forward = eliminate_forward(figure1, partial, 'D')
    assert [e.value for e in basic] == ['red', 'yellow']
    assert [(e.value, set(e.culprits)) for e in forward] == [
        ('red', {'A'}), ('yellow', {'B'}), ('blue', {'A', 'B'}),
    ]


def test_crossword_value_without_completion_blames_the_filled_slot():
    problem = crossword_csp(parse_frame('..\n..\n'), ['ab', 'bc'])
    partial = PartialSolution(problem, [('across-r0c0', 'bc')])
    found = eliminate_basic(problem, partial, 'down-r0c1')
    assert [(e.value, set(e.culprits)) for e in found] == [
        ('ab', {'across-r0c0'}), ('bc', {'across-r0c0'}),
    ]


def test_get_mechanism_resolves_names_and_callables():
    assert get_mechanism('forward') is MECHANISMS['forward']
    custom = get_mechanism(eliminate_basic)
    assert isinstance(custom, Mechanism) and custom.name == 'eliminate_basic'
    assert get_mechanism(custom) is custom


@pytest.mark.parametrize('bad', ['sideways', 42])
def test_get_mechanism_rejects_unknown(bad):
    with pytest.raises(ConfigError):
        get_mechanism(bad)


def test_forward_skips_wipe_outs_without_culprits(words):
    problem = crossword_csp(bundled_frame('open-2x2'), words)
    assert set(problem.variables) == {'across-r0c0', 'across-r1c0', 'down-r0c0', 'down-r0c1'}
    found = eliminate_forward(problem, PartialSolution(problem), 'across-r0c0')
    assert found == []


def mixed_problem(seed, d):
    """Four variables, random binary constraints and one random ternary one"""
    rng = np.random.default_rng(seed)
    domain = tuple(str(k) for k in range(d))
    names = ('a', 'b', 'c', 'd')
    constraints = []
    for first, second in (('a', 'b'), ('a', 'c'), ('b', 'd'), ('c', 'd')):
        if rng.random() < 0.7:
            allowed = [pair for pair in product(domain, repeat=2) if rng.random() < 0.6]
            constraints.append(Constraint.extensional((first, second), allowed))
    allowed = [triple for triple in product(domain, repeat=3) if rng.random() < 0.7]
    constraints.append(Constraint.extensional(('a', 'b', 'd'), allowed))
    return Problem.build([(name, domain) for name in names], constraints)


def random_partial(problem, seed):
    rng = np.random.default_rng(seed)
    bindings = []
    for name in rng.permutation(problem.variables):
        if rng.random() < 0.5:
            domain = problem.domains[str(name)]
            bindings.append((str(name), domain[int(rng.integers(len(domain)))]))
    return PartialSolution(problem, bindings)


def forward_by_enumeration(problem, partial, name):
    """Forward-checking eliminations computed one witness value at a time"""
    values = partial.values
    expected = {e.value: set(e.culprits) for e in eliminate_basic(problem, partial, name)}
    for value in problem.domains[name]:
        if value in expected:
            continue
        bound = {**values, name: value}
        for witness in problem.neighbors[name]:
            if witness in values:
                continue
            firsts = [
                first_violation(problem, bound, (witness, w), among=problem.constraints_on[witness])
                for w in problem.domains[witness]
            ]
            if any(first is None for first in firsts):
                continue
            culprits = set()
            for first in firsts:
                culprits.update(v for v in problem.constraints[first].scope if v in values)
            if culprits:
                expected[value] = culprits
                break
    return expected


def as_sets(found):
    return {e.value: set(e.culprits) for e in found}


@settings(deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(1, 3))
def test_forward_agrees_with_enumeration_on_mixed_arities(problem_seed, partial_seed, d):
    problem = mixed_problem(problem_seed, d)
    partial = random_partial(problem, partial_seed)
    unassigned = list(partial.unassigned())
    assume(unassigned)
    for name in unassigned:
        assert as_sets(eliminate_forward(problem, partial, name)) == forward_by_enumeration(problem, partial, name)


@settings(deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(2, 7), st.integers(1, 3),
       st.sampled_from([0.2, 0.5, 0.8]), st.sampled_from([0.2, 0.5, 0.8]))
def test_forward_eliminates_everything_basic_does(problem_seed, partial_seed, n, d, p1, p2):
    problem = random_binary_csp(n, d, p1, p2, problem_seed)
    partial = random_partial(problem, partial_seed)
    for name in partial.unassigned():
        basic = as_sets(eliminate_basic(problem, partial, name))
        forward = as_sets(eliminate_forward(problem, partial, name))
        assert set(forward) >= set(basic)
        assert all(forward[value] == culprits for value, culprits in basic.items())


def test_forward_on_a_crossword_agrees_with_enumeration(words):
    three = [word for word in words if len(word) == 3][:60]
    problem = crossword_csp(parse_frame('...\n...\n...\n'), three)
    partial = PartialSolution(problem, [('across-r0c0', three[0]), ('down-r0c2', three[5])])
    for name in partial.unassigned():
        assert as_sets(eliminate_forward(problem, partial, name)) == forward_by_enumeration(problem, partial, name)

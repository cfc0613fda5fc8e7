from itertools import product

import pytest
from hypothesis import given, strategies as st

from dynabt.core import (
    Constraint,
    PartialSolution,
    Problem,
    completed_constraints,
    first_violation,
    is_solution,
    validate_problem,
    violates,
)
from dynabt.errors import ProblemError


def small_problem():
    return Problem.build(
        [('a', ('0', '1')), ('b', ('0', '1')), ('c', ('0', '1', '2'))],
        [
            Constraint.neq('a', 'b'),
            Constraint.extensional(('b', 'c'), [('0', '0'), ('1', '2')]),
        ],
    )


def test_build_keeps_declaration_order():
    problem = small_problem()
    assert problem.variables == ('a', 'b', 'c')
    assert problem.domains['c'] == ('0', '1', '2')
    assert problem.search_space == 12
    assert problem.neighbors == {'a': ('b',), 'b': ('a', 'c'), 'c': ('b',)}
    assert problem.constraints_on['b'] == (0, 1)


def test_neq_shorthand_expands_to_unequal_pairs():
    expanded = Constraint.neq('a', 'b').expand({'a': ('0', '1'), 'b': ('0', '1')})
    assert not expanded.is_shorthand
    assert set(expanded.allowed) == {('0', '1'), ('1', '0')}


def test_relation_marks_allowed_tuples():
    problem = small_problem()
    neq = problem.relation(0)
    assert neq.tolist() == [[False, True], [True, False]]
    table = problem.relation(1)
    assert table.shape == (2, 3)
    assert table[0, 0] and table[1, 2]
    assert table.sum() == 2
    assert not table.flags.writeable


def test_validate_accepts_builder_output(figure1, xyz):
    assert validate_problem(figure1) == []
    assert validate_problem(xyz) == []


@pytest.mark.parametrize('problem, fragment', [
    (Problem.build([('a', ('0',))], [Constraint.extensional(('a', 'a'), [('0', '0')])]),
     'duplicate scope variable'),
    (Problem.build([('a', ('0',)), ('b', ('0',))], [Constraint.extensional(('a', 'b'), [('0', '9')])]),
     'tuple out of domain'),
    (Problem.build([('a', ())]), 'empty domain'),
    (Problem.build([('a', ('0', '0'))]), 'duplicate value'),
    (Problem.build([('a', ('0',))], [Constraint.neq('a', 'zz')]), "unknown scope variable 'zz'"),
    (Problem.build([('a', ('0',))], [Constraint(('a',), kind='lt')]), "unknown constraint kind"),
])
def test_validate_reports_violations(problem, fragment):
    violations = validate_problem(problem)
    assert any(fragment in v for v in violations), violations


def test_is_solution():
    problem = small_problem()
    assert is_solution(problem, {'a': '1', 'b': '0', 'c': '0'})
    assert not is_solution(problem, {'a': '0', 'b': '0', 'c': '0'})
    assert not is_solution(problem, {'a': '0', 'b': '1', 'c': '0'})


@pytest.mark.parametrize('assignment', [
    {'a': '1', 'b': '0'},
    {'a': '1', 'b': '0', 'c': '7'},
    {'a': '1', 'b': '0', 'c': '0', 'd': '0'},
])
def test_is_solution_rejects_malformed_assignments(assignment):
    with pytest.raises(ProblemError):
        is_solution(small_problem(), assignment)


def test_partial_solution_keeps_binding_order():
    problem = small_problem()
    partial = PartialSolution(problem, [('c', '2'), ('a', '0')])
    assert partial.bindings == (('c', '2'), ('a', '0'))
    assert list(partial.unassigned()) == ['b']
    partial.bind('b', '1')
    assert partial.prefix('b') == (('c', '2'), ('a', '0'))
    assert partial.unbind('a') == '0'
    assert partial.bindings == (('c', '2'), ('b', '1'))
    assert partial.position('b') == 1
    assert partial.pop() == ('b', '1')
    assert 'b' not in partial
    assert partial.last() == ('c', '2')


@pytest.mark.parametrize('name, value', [('a', '0'), ('zz', '0'), ('b', '5')])
def test_bind_rejects_bad_bindings(name, value):
    partial = PartialSolution(small_problem(), [('a', '1')])
    with pytest.raises(ProblemError):
        partial.bind(name, value)


def test_completed_constraints_and_first_violation():
    problem = small_problem()
    assert completed_constraints(problem, {'a'}, 'b') == [problem.constraints[0]]
    assert len(completed_constraints(problem, {'a', 'c'}, 'b')) == 2
    assert first_violation(problem, {'a': '0', 'c': '0'}, ('b', '0')) == 0
    assert first_violation(problem, {'a': '1', 'c': '1'}, ('b', '0')) == 1
    assert first_violation(problem, {'a': '1', 'c': '0'}, ('b', '0')) is None
    assert first_violation(problem, {'a': '0', 'c': '0'}, ('b', '0'), among=[1]) is None


def test_violates_returns_the_first_violated_constraint():
    problem = small_problem()
    partial = PartialSolution(problem, [('a', '0'), ('c', '1')])
    assert violates(problem, partial, ('b', '0')) is problem.constraints[0]
    assert violates(problem, partial, ('b', '1')) is problem.constraints[1]
    with pytest.raises(ProblemError):
        violates(problem, partial, ('a', '1'))


@given(st.sampled_from(['0', '1']), st.sampled_from(['0', '1', '2']))
def test_relation_agrees_with_allows(b, c):
    problem = small_problem()
    constraint = problem.constraints[1]
    cell = problem.relation(1)[problem.value_order['b'][b], problem.value_order['c'][c]]
    assert bool(cell) == constraint.allows((b, c))


def mixed_scopes():
    domain = ('0', '1')
    return Problem.build(
        [(name, domain) for name in 'abcde'],
        [
            Constraint.neq('a', 'b'),
            Constraint.extensional(('b', 'c', 'd'), [('0', '0', '0')]),
            Constraint.extensional(('e',), [('1',)]),
            Constraint.extensional(('a', 'e'), [('0', '1')]),
            Constraint.neq('c', 'd'),
        ],
    )


@given(st.sets(st.sampled_from('abcde')), st.sets(st.sampled_from('abcde')), st.sampled_from('abcde'))
def test_completed_constraints_grow_with_the_assigned_set(smaller, extra, name):
    problem = mixed_scopes()
    fewer = completed_constraints(problem, smaller, name)
    more = completed_constraints(problem, smaller | extra, name)
    assert all(any(c is d for d in more) for c in fewer)


@pytest.mark.parametrize('d', [1, 2, 3, 4])
def test_neq_shorthand_and_expansion_agree(d):
    domain = tuple(str(k) for k in range(d))
    domains = {'a': domain, 'b': domain, 'c': domain}
    shorthand = Problem.build(domains.items(), [Constraint.neq('a', 'b'), Constraint.neq('b', 'c')])
    expanded = Problem.build(domains.items(), [c.expand(domains) for c in shorthand.constraints])
    assert not any(c.is_shorthand for c in expanded.constraints)
    for values in product(domain, repeat=3):
        assignment = dict(zip('abc', values))
        assert is_solution(shorthand, assignment) == is_solution(expanded, assignment)
        for cut in range(3):
            bindings = list(assignment.items())[:cut]
            extra = ('abc'[cut], values[cut])
            found = violates(shorthand, PartialSolution(shorthand, bindings), extra)
            reference = violates(expanded, PartialSolution(expanded, bindings), extra)
            assert (found is None) == (reference is None)
            if found is not None:
                assert shorthand.constraints.index(found) == expanded.constraints.index(reference)
        assert (shorthand.relation(0) == expanded.relation(0)).all()


def test_support_classes_merge_values_with_equal_rows():
    problem = Problem.build(
        [('across', ('ab', 'ac', 'bc')), ('down', ('ax', 'bx', 'cx', 'by'))],
        [Constraint.extensional(('across', 'down'),
                                [(a, d) for a in ('ab', 'ac', 'bc') for d in ('ax', 'bx', 'cx', 'by')
                                 if a[0] == d[0]])],
    )
    labels, rows = problem.support_classes(0, 'across')
    assert labels[0] == labels[1] != labels[2]
    assert rows[labels[0]].tolist() == [True, False, False, False]
    assert rows[labels[2]].tolist() == [False, True, False, True]
    labels, rows = problem.support_classes(0, 'down')
    assert len(rows) == 3
    assert labels[1] == labels[3]
    assert rows[labels[1]].tolist() == [False, False, True]
    assert problem.support_classes(0, 'down')[1] is rows


def test_support_classes_need_a_binary_constraint(xyz):
    with pytest.raises(ProblemError):
        xyz.support_classes(0, 'x')

import itertools

import numpy as np
import pytest

from uawork import (ArityMismatchError, Budget, ElementRangeError, NotASubuniverseError, SubpowerEngine, Termination,
                    TupleCodec, builtin, diagonal, eval_componentwise, generate, induced_algebra, parse_algebra,
                    project, serialize_subpower)


def audit(S):
    """
    Applies every operation to every combination of members and checks the result is a member.
    """
    A = S.algebra
    members = list(S)
    for symbol, arity, _ in A.operations():
        for args in itertools.product(members, repeat=arity):
            if not S.contains(eval_componentwise(A, symbol, list(args), k=S.arity)):
                return False
    return True


def test_single_generator_generates_universe(paper):
    S = generate(paper, 1, [(1,)])
    assert S.closed
    assert S.termination is Termination.CLOSED
    assert S.sorted_tuples() == [(a,) for a in range(6)]
    assert S.generators == ((1,),)
    assert S.tuple_at(0) == (1,)


def test_constant_tuples_give_diagonal(paper):
    S = generate(paper, 3, [(a, a, a) for a in range(6)])
    assert S.closed
    assert len(S) == 6
    assert S.sorted_tuples() == [(a, a, a) for a in range(6)]
    assert diagonal(paper, 3).sorted_tuples() == S.sorted_tuples()


def test_closed_subpower_passes_audit(paper):
    S = generate(paper, 2, [(1, 0)])
    assert S.closed
    assert len(S) == 12
    assert audit(S)
    assert S.contains((1, 0))
    assert S.contains((3, 3))
    assert not S.contains((1, 1))
    with pytest.raises(ArityMismatchError):
        S.contains((1, 0, 0))


def test_generator_order_does_not_matter():
    A = builtin("sym3")
    generators = [(1, 2), (3, 0), (2, 2)]
    reference = generate(A, 2, generators).sorted_tuples()
    for permuted in itertools.permutations(generators):
        assert generate(A, 2, list(permuted)).sorted_tuples() == reference


def test_generators_are_stored_first_without_repetitions(paper):
    S = generate(paper, 2, [(1, 0), (1, 0), (0, 2)])
    assert S.generators == ((1, 0), (0, 2))
    assert [S.tuple_at(0), S.tuple_at(1)] == [(1, 0), (0, 2)]


def test_insertion_budget(paper):
    S = generate(paper, 2, [(1, 0)], budget=Budget(3, 10 ** 6))
    assert not S.closed
    assert S.termination is Termination.INSERTIONS_EXHAUSTED
    assert S.insertions_used == 3
    assert len(S) == 4
    assert S.contains((1, 0))


def test_op_application_budget(paper):
    S = generate(paper, 2, [(1, 0), (0, 1)], budget=Budget(10 ** 6, 5))
    assert not S.closed
    assert S.termination is Termination.OPS_EXHAUSTED
    assert S.op_applications_used == 5
    assert S.contains((0, 1))


def test_observer_sees_each_tuple_once(paper):
    seen = []
    S = generate(paper, 2, [(1, 0), (0, 1)], observer=lambda t, i: seen.append((t, i)))
    assert [i for _, i in seen] == list(range(len(S)))
    assert [t for t, _ in seen] == list(S)


def test_observer_stop(paper):
    S = generate(paper, 2, [(1, 0), (0, 1)], observer=lambda t, i: i == 3)
    assert S.termination is Termination.STOPPED
    assert not S.closed
    assert len(S) == 4
    assert S.insertions_used == 2


def test_generator_validation(paper):
    with pytest.raises(ArityMismatchError):
        generate(paper, 2, [(1, 0, 0)])
    with pytest.raises(ElementRangeError):
        generate(paper, 2, [(1, 6)])
    with pytest.raises(ArityMismatchError):
        generate(paper, 0, [])


def test_dict_index_and_byte_keys(paper):
    reference = generate(paper, 2, [(1, 0)]).sorted_tuples()
    S = SubpowerEngine(paper, 2, dense_index_limit=0).generate([(1, 0)])
    assert S.sorted_tuples() == reference
    assert not TupleCodec(6, 25).packed
    wide = generate(paper, 25, [(1,) * 25])
    assert wide.closed
    assert wide.sorted_tuples() == [(a,) * 25 for a in range(6)]


def test_project(paper):
    D = diagonal(paper, 3)
    P = project(D, [0])
    assert P.closed
    assert P.sorted_tuples() == [(a,) for a in range(6)]
    S = generate(paper, 2, [(1, 0)])
    assert project(S, [0, 1]).sorted_tuples() == S.sorted_tuples()
    swapped = project(S, [1, 0])
    assert swapped.sorted_tuples() == sorted((b, a) for a, b in S)
    with pytest.raises(ArityMismatchError):
        project(S, [2])


def test_induced_algebra(paper):
    D = induced_algebra(diagonal(paper, 2))
    assert D.size == 6
    for symbol, _, table in paper.operations():
        assert np.array_equal(D.table(symbol), table)
    partial = generate(paper, 2, [(1, 0)], budget=Budget(1, 10 ** 6))
    with pytest.raises(NotASubuniverseError):
        induced_algebra(partial)


def test_empty_subpower():
    A = parse_algebra("algebra U\nsize 2\nop f 1\n1 0\n")
    S = generate(A, 2, [])
    assert S.closed
    assert len(S) == 0
    with pytest.raises(NotASubuniverseError):
        induced_algebra(S)


def test_serialize_subpower(paper):
    text = serialize_subpower(diagonal(paper, 2))
    lines = text.splitlines()
    assert lines[0] == "subpower k=2 size=6 closed=true"
    assert lines[1:] == ["{} {}".format(a, a) for a in range(6)]

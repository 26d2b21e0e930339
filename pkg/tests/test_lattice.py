import itertools
import os
import random

import pytest

from oracles import all_partitions, brute_congruences, brute_subuniverses
from uawork import (ALGEBRA_CORPUS_DIR, NotACongruenceError, Partition, PreconditionError, SizeGuardError,
                    SizeMismatchError, Subset, WorkbenchError, all_subuniverses, builtin, class_index,
                    compose_is_full, congruence_generated, congruence_lattice, diagonal, generate,
                    is_congruence, is_directly_indecomposable, is_subdirect, is_subuniverse, join, load_algebra,
                    meet, require_congruence, saturation, subuniverse_closure, unary_algebras)


SMALL = ["paper-b", "cyclic-2", "cyclic-3", "cyclic-4", "klein4", "unary-3"]


def test_partition_forms():
    theta = Partition.parse("0 3|1 4|2 5")
    assert theta.labels == (0, 1, 2, 0, 1, 2)
    assert theta.blocks() == [(0, 3), (1, 4), (2, 5)]
    assert str(theta) == "0 3|1 4|2 5"
    assert theta == Partition([7, 8, 9, 7, 8, 9])
    assert theta == Partition.from_blocks(6, [[4, 1], [3, 0], [5, 2]])
    assert theta.num_blocks == 3
    assert list(theta.pairs())[:3] == [(0, 0), (0, 3), (1, 1)]
    assert len(list(theta.pairs())) == 12
    assert str(Partition.zero(3)) == "0|1|2"
    assert str(Partition.one(3)) == "0 1 2"
    assert Partition.parse("0 1", 4) == Partition([0, 0, 2, 3])
    with pytest.raises(WorkbenchError):
        Partition.parse("0 1|1 2")
    with pytest.raises(WorkbenchError):
        Partition.parse("0 2")
    with pytest.raises(WorkbenchError):
        Partition.parse("0 x|1")


def test_partition_order():
    theta = Partition.parse("0 3|1 4|2 5")
    zero, one = Partition.zero(6), Partition.one(6)
    assert zero <= theta <= one
    assert not one <= theta
    assert zero.is_zero() and one.is_one()
    with pytest.raises(SizeMismatchError):
        theta <= Partition.zero(3)


def test_subset_forms():
    S = Subset.parse("3,0", 6)
    assert S.elements == (0, 3)
    assert str(S) == "{0,3}"
    assert S.mask.tolist() == [True, False, False, True, False, False]
    assert 3 in S and 1 not in S
    assert str(Subset(6)) == "{}"
    assert Subset.full(3).elements == (0, 1, 2)


def test_paper_congruences(paper, theta):
    assert congruence_lattice(paper) == [Partition.zero(6), theta, Partition.one(6)]
    assert is_congruence(paper, theta)
    assert not is_congruence(paper, Partition.parse("0 2 4|1 3 5"))
    with pytest.raises(NotACongruenceError):
        require_congruence(paper, Partition.parse("0 1|2 3|4 5"))
    with pytest.raises(SizeMismatchError):
        is_congruence(paper, Partition.zero(3))


def test_congruence_generated(paper, theta):
    assert congruence_generated(paper, [(0, 3)]) == theta
    assert congruence_generated(paper, [(0, 2)]) == Partition.one(6)
    assert congruence_generated(paper, []) == Partition.zero(6)
    assert congruence_generated(paper, [(4, 4)]) == Partition.zero(6)
    cyclic = builtin("cyclic-6")
    assert congruence_generated(cyclic, [(0, 2)]) == Partition.parse("0 2 4|1 3 5")


@pytest.mark.parametrize("name", SMALL)
def test_congruences_against_brute_force(name):
    A = load_algebra(name)
    assert congruence_lattice(A) == brute_congruences(A)


def test_congruences_of_unary_algebras_against_brute_force():
    for A in unary_algebras(3, 1):
        assert congruence_lattice(A) == brute_congruences(A)


@pytest.mark.parametrize("name", SMALL)
def test_subuniverses_against_brute_force(name):
    A = load_algebra(name)
    assert all_subuniverses(A) == brute_subuniverses(A)


def test_lattice_axioms():
    for name in ("paper-z6", "cyclic-4", "klein4", "sym3"):
        A = builtin(name)
        lattice = congruence_lattice(A)
        assert lattice[0] == Partition.zero(A.size)
        assert lattice[-1] == Partition.one(A.size)
        members = set(lattice)
        for p, q in itertools.product(lattice, repeat=2):
            assert join(p, q) in members
            assert meet(p, q) in members
            assert join(p, q) == join(q, p)
            assert meet(p, join(p, q)) == p
            assert join(p, meet(p, q)) == p


def test_join_and_meet_on_random_partitions():
    partitions = list(all_partitions(6))
    rng = random.Random(6)
    for _ in range(300):
        p, q, r = (rng.choice(partitions) for _ in range(3))
        assert join(join(p, q), r) == join(p, join(q, r))
        assert meet(meet(p, q), r) == meet(p, meet(q, r))
        assert join(p, q) == join(q, p)
        assert meet(p, q) == meet(q, p)
        assert meet(p, q) <= p <= join(p, q)
        assert meet(p, join(p, q)) == p
        assert join(p, meet(p, q)) == p


@pytest.mark.parametrize("name", SMALL)
def test_generated_congruence_is_the_least_one(name):
    A = load_algebra(name)
    congruences = brute_congruences(A)
    pairs = list(itertools.combinations(range(A.size), 2))
    for seeds in itertools.chain(([], ), ([pair] for pair in pairs), itertools.combinations(pairs, 2)):
        generated = congruence_generated(A, list(seeds))
        assert generated in congruences
        assert all(generated.related(a, b) for a, b in seeds)
        for theta in congruences:
            if all(theta.related(a, b) for a, b in seeds):
                assert generated <= theta, (name, seeds, str(theta))


def test_paper_subuniverses(paper):
    subuniverses = all_subuniverses(paper)
    assert [str(S) for S in subuniverses] == ["{0,3}", "{0,1,2,3,4,5}"]
    assert subuniverse_closure(paper, []) == Subset(6, [0, 3])
    assert subuniverse_closure(paper, [2]) == Subset.full(6)
    assert is_subuniverse(paper, [0, 3])
    assert not is_subuniverse(paper, [0, 2, 4])


def test_empty_subuniverse_without_constants():
    A = load_algebra("unary-3")
    assert all_subuniverses(A)[0] == Subset(3)
    assert is_subuniverse(A, [])


def test_size_guards(paper):
    with pytest.raises(SizeGuardError):
        congruence_lattice(paper, max_size=5)
    with pytest.raises(SizeGuardError):
        all_subuniverses(paper, max_size=5)


def test_saturation(paper, theta):
    assert saturation(paper, [0, 3], theta) == Subset(6, [0, 3])
    assert saturation(paper, [0, 3], Partition.one(6)) == Subset.full(6)
    assert saturation(paper, [1], theta) == Subset(6, [1, 4])
    with pytest.raises(NotACongruenceError):
        saturation(paper, [0, 3], Partition.parse("0 1|2 3|4 5"))


@pytest.mark.parametrize("name", ["paper-z6", "sym3", "klein4", "cyclic-4"])
def test_saturation_is_a_closure_operator(name):
    A = builtin(name)
    subsets = [frozenset(c) for r in range(A.size + 1) for c in itertools.combinations(range(A.size), r)]
    for theta in congruence_lattice(A):
        for B in subsets:
            saturated = set(saturation(A, B, theta))
            assert B <= saturated
            assert set(saturation(A, saturated, theta)) == saturated
            for x in range(A.size):
                assert saturated <= set(saturation(A, B | {x}, theta))
        for B in all_subuniverses(A):
            assert is_subuniverse(A, saturation(A, B, theta))


def test_is_subdirect(paper):
    assert is_subdirect(paper, diagonal(paper, 2))
    assert is_subdirect(paper, generate(paper, 2, [(1, 1), (0, 3)]))
    assert not is_subdirect(paper, generate(paper, 2, [(1, 0)]))
    assert not is_subdirect(paper, generate(load_algebra("unary-3"), 2, []))


def test_class_index(paper, theta):
    assert class_index(Partition.one(6), theta) == 3
    assert class_index(theta, Partition.zero(6)) == 2
    assert class_index(Partition.one(6), Partition.zero(6)) == 6
    assert class_index(Partition.parse("0 1|2 3 4"), Partition.zero(5)) is None
    with pytest.raises(PreconditionError):
        class_index(theta, Partition.one(6))


def test_compose_is_full():
    assert compose_is_full(Partition.parse("0 3|1 4|2 5"), Partition.parse("0 2 4|1 3 5"))
    assert not compose_is_full(Partition.parse("0 3|1 4|2 5"), Partition.parse("0 3|1 4|2 5"))


def test_direct_indecomposability(paper, theta):
    indecomposable, witness = is_directly_indecomposable(paper)
    assert indecomposable and witness is None
    indecomposable, witness = is_directly_indecomposable(builtin("cyclic-6"))
    assert not indecomposable
    assert witness == (theta, Partition.parse("0 2 4|1 3 5"))
    assert is_directly_indecomposable(builtin("cyclic-4"))[0]
    assert not is_directly_indecomposable(builtin("klein4"))[0]


def test_corpus_algebras_are_packaged():
    names = sorted(os.listdir(ALGEBRA_CORPUS_DIR))
    assert "paper-z6.alg" in names
    for name in names:
        A = load_algebra(os.path.join(ALGEBRA_CORPUS_DIR, name))
        assert congruence_lattice(A)[0] == Partition.zero(A.size)

import numpy as np
import pytest

from uawork import (AlgebraFormatError, ArityMismatchError, ElementRangeError, FiniteAlgebra, NotACongruenceError,
                    NotASubuniverseError, Partition, Signature, SignatureError, UnknownAlgebraError, builtin,
                    direct_product, eval_componentwise, eval_op, load_algebra, parse_algebra, quotient_algebra,
                    serialize_algebra, subalgebra, unary_algebras)


Z6_TEXT = """\
# Z_6 with s and c
algebra paper-z6
size 6
op + 2
0 1 2 3 4 5  1 2 3 4 5 0
2 3 4 5 0 1  3 4 5 0 1 2
4 5 0 1 2 3  5 0 1 2 3 4
op s 1
0 3 3 0 3 3
op c 0
3
"""


def test_parse_z6_expansion():
    A = parse_algebra(Z6_TEXT)
    assert A.size == 6
    assert A.signature.symbols == (("+", 2), ("s", 1), ("c", 0))
    assert A.table("s").tolist() == [0, 3, 3, 0, 3, 3]
    assert int(A.table("c")[()]) == 3
    assert A == builtin("paper-z6")


def test_parse_one_element_algebra(one_element):
    assert one_element.size == 1
    assert eval_op(one_element, "c", []) == 0


def test_parse_reports_line_numbers():
    with pytest.raises(AlgebraFormatError) as info:
        parse_algebra("algebra X\nsize 6\nop s 1\n0 3 3 0 3 6\n")
    assert info.value.lineno == 4
    assert "line 4" in str(info.value)

    with pytest.raises(AlgebraFormatError) as info:
        parse_algebra("algebra X\nsize 2\nop s 1\n0\nop t 1\n0 1\n")
    assert info.value.lineno == 5

    with pytest.raises(AlgebraFormatError) as info:
        parse_algebra("size 2\n")
    assert info.value.lineno == 1

    with pytest.raises(AlgebraFormatError):
        parse_algebra("algebra X\nsize 2\nop s 1\n0 1 1\n")

    with pytest.raises(AlgebraFormatError):
        parse_algebra("algebra X\nsize 2\nop s 1\n0 1\nop s 1\n0 1\n")


def test_serialize_then_parse(paper):
    text = serialize_algebra(paper)
    assert text.splitlines()[:4] == ["algebra paper-z6", "size 6", "op + 2", "0 1 2 3 4 5"]
    assert parse_algebra(text) == paper
    klein = builtin("klein4")
    assert parse_algebra(serialize_algebra(klein)) == klein


def test_eval_op(paper, one_element):
    assert eval_op(paper, "s", [2]) == 3
    assert eval_op(paper, "+", [5, 1]) == 0
    assert eval_op(paper, "c", []) == 3
    with pytest.raises(SignatureError):
        eval_op(paper, "t", [1])
    with pytest.raises(ArityMismatchError):
        eval_op(paper, "+", [1])
    with pytest.raises(ElementRangeError):
        eval_op(paper, "s", [6])


def test_eval_componentwise(paper):
    assert eval_componentwise(paper, "s", [(1, 4)]) == (3, 3)
    assert eval_componentwise(paper, "+", [(0, 3), (3, 3)]) == (3, 0)
    assert eval_componentwise(paper, "+", [(2, 2, 2), (5, 5, 5)]) == (1, 1, 1)
    assert eval_componentwise(paper, "c", [], k=3) == (3, 3, 3)
    with pytest.raises(ArityMismatchError):
        eval_componentwise(paper, "+", [(0, 3), (3,)])


def test_eval_componentwise_matches_projections():
    rng = np.random.default_rng(7)
    for name in ("paper-z6", "sym3", "dihedral-4"):
        A = builtin(name)
        for symbol, arity, _ in A.operations():
            if arity == 0:
                continue
            args = [tuple(int(x) for x in rng.integers(0, A.size, 4)) for _ in range(arity)]
            result = eval_componentwise(A, symbol, args)
            for i in range(4):
                assert result[i] == eval_op(A, symbol, [t[i] for t in args])


def test_quotient_by_theta(paper, theta):
    Q = quotient_algebra(paper, theta)
    assert Q.size == 3
    x, y = np.indices((3, 3))
    assert np.array_equal(Q.table("+"), (x + y) % 3)
    assert Q.table("s").tolist() == [0, 0, 0]
    assert int(Q.table("c")[()]) == 0


def test_quotient_by_zero_and_one(paper):
    Q = quotient_algebra(paper, Partition.zero(6))
    for symbol, _, table in paper.operations():
        assert np.array_equal(Q.table(symbol), table)
    assert quotient_algebra(paper, Partition.one(6)).size == 1
    with pytest.raises(NotACongruenceError):
        quotient_algebra(paper, Partition.parse("0 1|2 3|4 5"))


def test_builtins():
    cyclic = builtin("cyclic-4")
    assert cyclic.signature.symbols == (("+", 2), ("-", 1), ("0", 0))
    assert cyclic.table("-").tolist() == [0, 3, 2, 1]
    B = builtin("paper-b")
    assert B.size == 2
    assert B.table("s").tolist() == [0, 0]
    assert int(B.table("c")[()]) == 1
    assert B == subalgebra(builtin("paper-z6"), [0, 3], name="paper-b")
    for name, size in (("sym3", 6), ("dihedral-4", 8), ("quaternion-8", 8), ("klein4", 4)):
        assert builtin(name).size == size
    for name in ("sym3", "dihedral-4", "quaternion-8"):
        table = builtin(name).table("*")
        assert not np.array_equal(table, table.T)
    with pytest.raises(UnknownAlgebraError):
        builtin("frobnicator")
    with pytest.raises(UnknownAlgebraError):
        builtin("cyclic-0")


def test_load_algebra_corpus_and_files(tmp_path):
    assert load_algebra("paper-z6.alg") == builtin("paper-z6")
    assert load_algebra("paper-b") == builtin("paper-b")
    assert load_algebra("klein4.alg") == builtin("klein4")
    assert load_algebra("cyclic-4.alg") == builtin("cyclic-4")
    assert load_algebra("cyclic-5") == builtin("cyclic-5")
    path = tmp_path / "two.alg"
    path.write_text("algebra two\nsize 2\nop f 1\n1 0\n")
    A = load_algebra(str(path))
    assert A.name == "two"
    assert A.table("f").tolist() == [1, 0]
    with pytest.raises(UnknownAlgebraError):
        load_algebra("no-such-algebra.alg")


def test_subalgebra():
    A = builtin("cyclic-6")
    S = subalgebra(A, [0, 2, 4])
    assert S.size == 3
    assert S.table("+").tolist() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    with pytest.raises(NotASubuniverseError):
        subalgebra(A, [0, 1])
    with pytest.raises(NotASubuniverseError):
        subalgebra(A, [])


def test_direct_product():
    A = direct_product(builtin("cyclic-2"), builtin("cyclic-3"))
    assert A.size == 6
    assert A.name == "cyclic-2xcyclic-3"
    # (1, 2) + (1, 2) = (0, 1)
    assert eval_op(A, "+", [5, 5]) == 1
    assert direct_product(builtin("cyclic-2"), builtin("cyclic-2"), name="klein4") == builtin("klein4")
    with pytest.raises(SignatureError):
        direct_product(builtin("cyclic-2"), builtin("paper-b"))


def test_unary_algebras():
    assert len(list(unary_algebras(2, 1))) == 4
    algebras = list(unary_algebras(2, 2))
    assert len(algebras) == 16
    assert algebras[0].signature.symbols == (("f0", 1), ("f1", 1))
    assert len({A.name for A in algebras}) == 16


def test_signature_and_table_checks():
    with pytest.raises(SignatureError):
        Signature([("f", 1), ("f", 2)])
    with pytest.raises(SignatureError):
        Signature([("f", -1)])
    with pytest.raises(SignatureError):
        FiniteAlgebra("X", 2, [("f", 1)], {"f": [0, 1, 1]})
    with pytest.raises(ElementRangeError):
        FiniteAlgebra("X", 2, [("f", 1)], {"f": [0, 2]})
    A = FiniteAlgebra("X", 2, [("f", 1)], {"f": [1, 0]})
    with pytest.raises(ValueError):
        A.table("f")[0] = 0

"""
License:
--------
Copyright 2026 The uawork Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.


File description:
-----------------
Replay of the Z_6 example with operations +, s and c: a 2-step nilpotent expansion of a group that is not
supernilpotent, and whose subalgebra B = {0,3} is not a homomorphic image of any finite subdirect power of it.

The obstruction works inside a subdirect D <= A^n: the 3-part V_3(D) = e(D), e(x) = 4x, is split into {0}, P and -P,
the sum of s(d) over d in P is the constant tuple c^D, and so every ideal of D containing V_3(D) contains c^D. Any
2-element quotient of D then satisfies c = 0, which B does not.

"""

import enum
import functools
import logging
from dataclasses import dataclass

import numpy as np

from .algebra import builtin, quotient_algebra, subalgebra
from .closure import Budget, generate, induced_algebra
from .commutator import Answer, is_abelian, is_supernilpotent, nilpotence_class, tc_commutator, \
    verify_delta_centrality
from .errors import IncompatibleAlgebraError, InternalCheckError, NotSubdirectError, SizeGuardError
from .lattice import (Partition, Subset, all_subuniverses, class_index, congruence_lattice, is_directly_indecomposable,
                      is_subdirect)
from .settings import default_config

__all__ = [
    "SylowSlice",
    "PlusMinusSplit",
    "SumIdentityResult",
    "ObstructionReport",
    "QuotientCheck",
    "Status",
    "ReportLine",
    "ExampleReport",
    "sylow3",
    "plus_minus_split",
    "verify_sum_identity",
    "verify_ideal_obstruction",
    "verify_group_expansion",
    "two_element_quotients",
    "sampled_subpowers",
    "verify_theorem_example",
]

logger = logging.getLogger(__name__)

_ORDER = 6
_V3 = (0, 2, 4)


def _require_z6_expansion(A, symbols=("+",)):
    if A.size != _ORDER or "+" not in A.signature or A.signature.arity("+") != 2:
        raise IncompatibleAlgebraError("{} is not an expansion of Z_6 by a binary '+'".format(A.name))
    x, y = np.indices((_ORDER, _ORDER))
    if not np.array_equal(A.table("+"), (x + y) % _ORDER):
        raise IncompatibleAlgebraError("'+' of {} is not addition modulo 6".format(A.name))
    expected = {"s": 1, "c": 0}
    for symbol in symbols:
        if symbol in expected and (symbol not in A.signature or A.signature.arity(symbol) != expected[symbol]):
            raise IncompatibleAlgebraError("{} has no {}-ary symbol {!r}".format(A.name, expected[symbol], symbol))


def _sum(A, rows, n):
    """
    Componentwise sum of a batch of n-tuples, starting from the zero tuple.
    """
    plus = A.table("+")
    return functools.reduce(lambda total, row: plus[total, row], rows, np.zeros(n, dtype=np.int64))


# ------------------------- Sylow 3-part -------------------------
@dataclass(frozen=True)
class SylowSlice:
    """
    V_3(D) = e(D) for a subpower D of A^n, stored as sorted n-tuples; |V_3(D)| = 3^dimension.
    """
    D: object
    elements: tuple
    dimension: int
    subdirect: bool

    @property
    def arity(self):
        return self.D.arity

    def __len__(self):
        return len(self.elements)


def sylow3(A, D):
    """
    :param FiniteAlgebra A: the Z_6 expansion.
    :param Subpower D: subpower of A^n.
    :rtype: SylowSlice
    :raises IncompatibleAlgebraError: if the '+' of A is not addition modulo 6.
    """
    _require_z6_expansion(A)
    plus = A.table("+")
    x = np.arange(_ORDER)
    double = plus[x, x]
    e = plus[double, double]
    if not np.array_equal(e[e], e):
        raise InternalCheckError("e(x) = 4x must be idempotent")
    rows = D.rows().astype(np.int64)
    images = np.unique(e[rows], axis=0) if len(rows) else rows
    elements = tuple(tuple(int(v) for v in row) for row in images)

    members = set(elements)
    for a in elements:
        for b in elements:
            if tuple(int(v) for v in plus[list(a), list(b)]) not in members:
                raise InternalCheckError("V_3(D) must be closed under +")
    dimension = 0
    while 3 ** dimension < len(elements):
        dimension += 1
    if 3 ** dimension != len(elements):
        raise InternalCheckError("|V_3(D)| must be a power of 3")

    subdirect = bool(len(images)) and all(set(images[:, i].tolist()) == set(_V3) for i in range(D.arity))
    if is_subdirect(A, D):
        if not subdirect:
            raise InternalCheckError("V_3 of a subdirect D must be subdirect in V_3(A)^n")
    return SylowSlice(D, elements, dimension, subdirect)


@dataclass(frozen=True)
class PlusMinusSplit:
    zero: tuple
    positive: tuple
    negative: tuple


def plus_minus_split(slice_, polarity="lower"):
    """
    Splits V_3(D) into {0}, P and -P by choosing one element of every orbit {d, -d}, d != 0.

    :param SylowSlice slice_: the 3-part.
    :param str polarity: "lower" puts the lexicographically smaller element of each orbit into P, "upper" the larger.
    :rtype: PlusMinusSplit
    """
    if polarity not in ("lower", "upper"):
        raise ValueError("polarity must be 'lower' or 'upper', got {!r}".format(polarity))
    choose = min if polarity == "lower" else max
    zero = (0,) * slice_.arity
    positive = set()
    negative = set()
    for d in slice_.elements:
        if d == zero:
            continue
        orbit = (d, tuple((-v) % _ORDER for v in d))
        chosen = choose(orbit)
        positive.add(chosen)
        negative.add(orbit[1] if chosen == orbit[0] else orbit[0])
    if len(positive) != (len(slice_) - 1) // 2:
        raise InternalCheckError("P must hold one element of every orbit {d, -d}")
    return PlusMinusSplit(zero, tuple(sorted(positive)), tuple(sorted(negative)))


@dataclass(frozen=True)
class SumIdentityResult:
    holds: bool
    total: tuple
    expected: tuple
    counting_holds: bool
    split: PlusMinusSplit

    @property
    def passed(self):
        return self.holds and self.counting_holds


def verify_sum_identity(A, D, polarity="lower"):
    """
    Checks that the sum of s(d) over d in P is the constant tuple c^D, and that at every coordinate i exactly
    2 * 3^(k-1) elements of V_3(D) are nonzero, |V_3(D)| = 3^k.

    :param FiniteAlgebra A: the Z_6 expansion with s and c.
    :param Subpower D: subdirect subpower of A^n.
    :param str polarity: orbit choice, see plus_minus_split.
    :rtype: SumIdentityResult
    :raises NotSubdirectError: if D is not subdirect.
    """
    _require_z6_expansion(A, ("+", "s", "c"))
    if not is_subdirect(A, D):
        raise NotSubdirectError("the sum identity needs a subdirect D")
    slice_ = sylow3(A, D)
    split = plus_minus_split(slice_, polarity)
    n = D.arity
    s = A.table("s")
    images = s[np.array(split.positive, dtype=np.int64).reshape(-1, n)]
    total = tuple(int(v) for v in _sum(A, images, n))
    expected = (int(A.table("c")[()]),) * n

    V = np.array(slice_.elements, dtype=np.int64).reshape(-1, n)
    off_kernel = np.count_nonzero(V != 0, axis=0)
    counting = slice_.dimension >= 1 and bool(np.all(off_kernel == 2 * 3 ** (slice_.dimension - 1)))
    return SumIdentityResult(total == expected, total, expected, counting, split)


# ------------------------- Ideals of D -------------------------
@dataclass(frozen=True)
class QuotientCheck:
    """
    A congruence of D with two classes whose 0-class contains V_3(D), and whether D/delta satisfies c = 0.
    """
    delta: Partition
    contains_c: bool
    satisfies_c_is_zero: bool


def _index_two_candidates(A, D, bound):
    _require_z6_expansion(A, ("+", "s", "c"))
    if bound is None:
        bound = int(default_config().get("ideal_obstruction", "max_size"))
    if len(D) > bound:
        raise SizeGuardError("|D| = {} exceeds the ideal obstruction bound {}".format(len(D), bound))
    if not is_subdirect(A, D):
        raise NotSubdirectError("the ideal obstruction needs a subdirect D")
    n = D.arity
    D_algebra = induced_algebra(D, name="{}-D{}".format(A.name, n))
    zero_id = D.id_of((0,) * n)
    c_id = D.id_of((int(A.table("c")[()]),) * n)
    slice_ = sylow3(A, D)
    v3_ids = D.ids_of(np.array(slice_.elements, dtype=np.int64).reshape(-1, n)).tolist()
    candidates = []
    index_two = 0
    for delta in congruence_lattice(D_algebra, max_size=bound):
        if delta.num_blocks != 2:
            continue
        index_two += 1
        if not all(delta.related(v, zero_id) for v in v3_ids):
            continue
        Q = quotient_algebra(D_algebra, delta)
        c = int(Q.table("c")[()])
        satisfies = c == int(Q.table("+")[c, c])
        candidates.append(QuotientCheck(delta, delta.related(c_id, zero_id), satisfies))
    return index_two, candidates


@dataclass(frozen=True)
class ObstructionReport:
    size: int
    index_two: int
    checked: tuple

    @property
    def vacuous(self):
        return not self.checked

    @property
    def passed(self):
        return all(check.contains_c for check in self.checked)


def verify_ideal_obstruction(A, D, bound=None):
    """
    Computes Con(D) on the algebra induced by D and checks that every congruence with two classes whose 0-class
    contains V_3(D) also has c^D in its 0-class.

    :param FiniteAlgebra A: the Z_6 expansion.
    :param Subpower D: closed subdirect subpower of A^n.
    :param int bound: largest |D|, ideal_obstruction.max_size from the configuration if None.
    :rtype: ObstructionReport
    """
    index_two, candidates = _index_two_candidates(A, D, bound)
    report = ObstructionReport(len(D), index_two, tuple(candidates))
    logger.info("ideal obstruction on |D|=%d: %d index-2 congruences, %d with V_3 in the 0-class", len(D),
                index_two, len(candidates))
    return report


def two_element_quotients(A, D, bound=None):
    """
    Lists the 2-element quotients D/delta with V_3(D) in the 0-class of delta, each with whether it satisfies c = 0.
    B does not satisfy c = 0, so none of those satisfying it is isomorphic to B.

    :rtype: list[QuotientCheck]
    """
    return _index_two_candidates(A, D, bound)[1]


def verify_group_expansion(A):
    """
    Checks that x + y, -x = 5x and 0 = c + c are the operations of a group on A.
    """
    if "+" not in A.signature or "c" not in A.signature:
        raise IncompatibleAlgebraError("{} has no '+' and 'c'".format(A.name))
    plus = A.table("+")
    x = np.arange(A.size)
    negate = x
    for _ in range(4):
        negate = plus[negate, x]
    c = int(A.table("c")[()])
    zero = int(plus[c, c])
    y, z = np.indices((A.size, A.size))
    associative = all(np.array_equal(plus[plus[a, y], z], plus[a, plus[y, z]]) for a in range(A.size))
    identity = np.array_equal(plus[zero, x], x) and np.array_equal(plus[x, zero], x)
    inverse = bool(np.all(plus[x, negate] == zero))
    return associative and identity and inverse


# ------------------------- Report -------------------------
class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class ReportLine:
    section: str
    name: str
    status: Status
    evidence: str

    def __str__(self):
        return "({}) {} {}: {}".format(self.section, self.status.value, self.name, self.evidence)


@dataclass(frozen=True)
class ExampleReport:
    lines: tuple

    def status(self, name):
        return next(line.status for line in self.lines if line.name == name)

    @property
    def passed(self):
        """
        No check failed, and non-supernilpotence is shown either by a witness or by the structural argument.
        """
        if any(line.status is Status.FAIL for line in self.lines):
            return False
        return Status.PASS in (self.status("supernilpotence-witness"), self.status("structural-certificate"))

    def to_text(self):
        out = [str(line) for line in self.lines]
        out.append("overall: {}".format("PASS" if self.passed else "FAIL"))
        return "\n".join(out) + "\n"


def _check(lines, section, name, passed, evidence):
    lines.append(ReportLine(section, name, Status.PASS if passed else Status.FAIL, evidence))


def _is_prime_power(n):
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def sampled_subpowers(A, config=None):
    """
    Returns D = A as a subpower of A^1, followed by the subpowers of A^2 generated by the configured generator sets.
    """
    config = config or default_config()
    samples = [generate(A, 1, [(a,) for a in range(A.size)])]
    for generators in config.get("paper_example", "sampled_generators"):
        samples.append(generate(A, 2, [tuple(g) for g in generators]))
    return samples


def _describe(D):
    return "D<=A^{} |D|={} gens={}".format(D.arity, len(D), " ".join("({})".format(",".join(map(str, g)))
                                                                     for g in D.generators))


def verify_theorem_example(budget=None, config=None):
    """
    Runs every check on the built-in algebra paper-z6 and collects one line per check.

    :param Budget budget: limits of the supernilpotence witness search, paper_example.witness_budget if None.
    :param WorkbenchConfig config: configuration, the packaged defaults if None.
    :rtype: ExampleReport
    """
    config = config or default_config()
    if budget is None:
        limits = config.get("paper_example", "witness_budget")
        budget = Budget(int(limits["max_insertions"]), int(limits["max_op_applications"]))
    A = builtin("paper-z6")
    n = A.size
    zero, one = Partition.zero(n), Partition.one(n)
    theta = Partition.parse("0 3|1 4|2 5")
    lines = []

    # (a) lattices and tables
    con = congruence_lattice(A)
    _check(lines, "a", "congruence-lattice", con == [zero, theta, one], " ; ".join(str(p) for p in con))
    sub = all_subuniverses(A)
    _check(lines, "a", "subuniverses", sub == [Subset(n, (0, 3)), Subset.full(n)], " ".join(str(s) for s in sub))
    _check(lines, "a", "class-index", (class_index(one, theta), class_index(theta, zero)) == (3, 2),
           "[1:theta]={} [theta:0]={}".format(class_index(one, theta), class_index(theta, zero)))
    B = subalgebra(A, (0, 3), name="paper-b")
    _check(lines, "a", "subalgebra-tables", B == builtin("paper-b"),
           "s={} c={}".format(B.table("s").tolist(), int(B.table("c")[()])))
    _check(lines, "a", "group-expansion", verify_group_expansion(A), "x+y, 5x, c+c")

    # (b) nilpotence
    cls = nilpotence_class(A, 3)
    _check(lines, "b", "nilpotence-class", cls == 2, "class={}".format(cls))
    one_theta = tc_commutator(A, one, theta)
    _check(lines, "b", "commutator-1-theta", one_theta == zero, "[1,theta]={}".format(one_theta))
    one_one = tc_commutator(A, one, one)
    _check(lines, "b", "commutator-1-1", one_one == theta, "[1,1]={}".format(one_one))
    _check(lines, "b", "delta-centrality", verify_delta_centrality(A, theta), "diagonal | off-diagonal on A(theta)")
    Q = quotient_algebra(A, theta)
    _check(lines, "b", "abelian-quotient", Q.size == 3 and is_abelian(Q), "|A/theta|={}".format(Q.size))

    # (c) structural certificate
    indecomposable, _ = is_directly_indecomposable(A, con)
    prime_power = _is_prime_power(n)
    _check(lines, "c", "structural-certificate", indecomposable and not prime_power,
           "directly indecomposable={} |A|={} prime power={}".format(indecomposable, n, prime_power))

    # (d) direct witness search
    result = is_supernilpotent(A, one, 2, budget)
    if result.answer is Answer.NO:
        status, evidence = Status.PASS, str(result.witness)
    elif result.answer is Answer.UNKNOWN:
        status, evidence = Status.UNDECIDED, "no collision among {} cube members ({})".format(
            result.cube_size, result.termination)
    else:
        status, evidence = Status.FAIL, "M(1,1,1) closed without collision"
    lines.append(ReportLine("d", "supernilpotence-witness", status, evidence))

    # (e) sum identity and ideal obstruction
    for D in sampled_subpowers(A, config):
        label = _describe(D)
        for polarity in ("lower", "upper"):
            identity = verify_sum_identity(A, D, polarity)
            _check(lines, "e", "sum-identity-{}".format(polarity), identity.passed,
                   "{} sum={} counting={}".format(label, identity.total, identity.counting_holds))
        obstruction = verify_ideal_obstruction(A, D)
        _check(lines, "e", "ideal-obstruction", obstruction.passed,
               "{} index-2={} checked={}{}".format(label, obstruction.index_two, len(obstruction.checked),
                                                   " (vacuous)" if obstruction.vacuous else ""))
        quotients = two_element_quotients(A, D)
        _check(lines, "e", "two-element-quotients", all(q.satisfies_c_is_zero for q in quotients),
               "{} quotients={} all satisfy c=0".format(label, len(quotients)))

    report = ExampleReport(tuple(lines))
    logger.info("example report: %s", "PASS" if report.passed else "FAIL")
    return report

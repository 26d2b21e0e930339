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
Hypercube subpowers M(theta_1, ..., theta_k) of A^(2^k), the 2-term higher commutator with its supernilpotence
decision, the term-condition commutator, nilpotence class and the centrality check on A(theta).

Coordinates of a 2^k-tuple are addressed by k-bit strings: the address read as an unsigned integer is the coordinate
position, bit j (place j, counted from the left) belongs to direction j, and the last coordinate is (1, ..., 1).

"""

import enum
import functools
import logging
from dataclasses import dataclass

import numpy as np
from bitstring import Bits

from .closure import generate, induced_algebra
from .errors import BudgetExhaustedError, InternalCheckError, PreconditionError
from .lattice import Partition, congruence_generated, is_congruence, require_congruence
from .settings import default_config

__all__ = [
    "CubeAddress",
    "addresses",
    "StandardGenerator",
    "standard_generator_specs",
    "standard_generators",
    "cube",
    "Decision",
    "CollisionWitness",
    "CollisionIndex",
    "CommutatorResult",
    "two_term_higher_commutator",
    "Answer",
    "SupernilpotenceResult",
    "is_supernilpotent",
    "check_witness",
    "tc_commutator",
    "nilpotence_class",
    "is_abelian",
    "verify_delta_centrality",
]

logger = logging.getLogger(__name__)


# ------------------------- Cube coordinates -------------------------
class CubeAddress:
    """
    Vertex of the k-dimensional hypercube {0,1}^k.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits):
        """
        :param bits: bitstring.Bits, or a sequence of 0/1 values, place 0 first.
        """
        self._bits = Bits(bits)

    @classmethod
    def from_index(cls, index, k):
        return cls(Bits(uint=index, length=k))

    @property
    def dimension(self):
        return len(self._bits)

    @property
    def index(self):
        return self._bits.uint

    def bit(self, j):
        return self._bits[j]

    def is_last(self):
        return self._bits.all(True)

    def hamming(self, other):
        return (self._bits ^ other._bits).count(True)

    def adjacent(self, other):
        return self.hamming(other) == 1

    def __eq__(self, other):
        return isinstance(other, CubeAddress) and self._bits == other._bits

    def __hash__(self):
        return hash(self._bits.bin)

    def __str__(self):
        return self._bits.bin

    def __repr__(self):
        return "CubeAddress({})".format(self._bits.bin)


def addresses(k):
    """
    Returns the 2^k addresses of the k-cube in coordinate order.
    """
    return [CubeAddress.from_index(index, k) for index in range(1 << k)]


@functools.lru_cache(maxsize=None)
def _upper_hyperface(k, j):
    """
    Boolean mask over coordinates, true where bit j of the address is 1.
    """
    mask = np.array([address.bit(j) for address in addresses(k)], dtype=bool)
    mask.setflags(write=False)
    return mask


@dataclass(frozen=True)
class StandardGenerator:
    """
    The 2^k-tuple equal to u on the hyperface bit j = 0 and to v on the hyperface bit j = 1.
    """
    dimension: int
    direction: int
    u: int
    v: int

    def expand(self):
        upper = _upper_hyperface(self.dimension, self.direction)
        return tuple(self.v if bit else self.u for bit in upper)

    @property
    def last(self):
        return self.v


def standard_generator_specs(theta_list):
    """
    Lists the standard generators of M(theta_1, ..., theta_k) by direction, then u, then v ascending. Pairs (u, u)
    give the constant tuples, so every direction contributes the whole diagonal.

    :param list theta_list: k partitions.
    :rtype: list[StandardGenerator]
    """
    k = len(theta_list)
    return [StandardGenerator(k, j, u, v) for j, theta in enumerate(theta_list) for u, v in theta.pairs()]


def _check_theta_list(A, theta_list):
    if not theta_list:
        raise PreconditionError("a cube needs at least one congruence")
    for theta in theta_list:
        require_congruence(A, theta)


def standard_generators(A, theta_list):
    """
    Expanded standard generators of M(theta_1, ..., theta_k) as 2^k-tuples, repetitions included.

    :param FiniteAlgebra A: algebra.
    :param list theta_list: congruences of A.
    :rtype: list[tuple]
    :raises NotACongruenceError: if some entry is not a congruence.
    """
    _check_theta_list(A, theta_list)
    return [g.expand() for g in standard_generator_specs(theta_list)]


def cube(A, theta_list, budget=None, observer=None):
    """
    Generates M(theta_1, ..., theta_k), the subpower of A^(2^k) generated by the standard generators in all
    directions.

    :rtype: Subpower
    """
    generators = standard_generators(A, theta_list)
    return generate(A, 1 << len(theta_list), generators, budget=budget, observer=observer)


# ------------------------- 2-term higher commutator -------------------------
class Decision(enum.Enum):
    """
    How far a commutator value can be trusted: computed on the closed cube, only compared against zero, or taken from
    a cube cut off by the budget.
    """
    EXACT = "exact"
    ZERO_TEST_ONLY = "zero-test-only"
    UNKNOWN_BUDGET = "unknown-budget"


@dataclass(frozen=True)
class CollisionWitness:
    """
    Two cube members that agree at every coordinate but the last one and differ there.
    """
    s: tuple
    t: tuple

    @property
    def s_last(self):
        return self.s[-1]

    @property
    def t_last(self):
        return self.t[-1]

    def to_dict(self):
        return {"s": list(self.s), "t": list(self.t), "s_last": self.s_last, "t_last": self.t_last}

    def __str__(self):
        return "s=({}) t=({}) last {} != {}".format(" ".join(map(str, self.s)), " ".join(map(str, self.t)),
                                                    self.s_last, self.t_last)


@dataclass(frozen=True)
class CommutatorResult:
    """
    Value of the 2-term higher commutator: the least congruence containing every collision pair of last coordinates.
    With decided != EXACT the value is only a lower bound.
    """
    value: Partition
    witnesses: tuple = ()
    decided: Decision = Decision.EXACT
    cube_size: int = 0
    collisions: int = 0

    def is_zero(self):
        return self.value.is_zero()

    def to_dict(self):
        return {
            "value": str(self.value),
            "decided": self.decided.value,
            "cube_size": self.cube_size,
            "collisions": self.collisions,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    def to_text(self):
        lines = ["value: {}".format(self.value), "decided: {}".format(self.decided.value),
                 "cube-size: {}".format(self.cube_size), "collisions: {}".format(self.collisions)]
        lines.extend("witness: {}".format(w) for w in self.witnesses)
        return "\n".join(lines) + "\n"


class CollisionIndex:
    """
    Insertion observer indexing cube members by their earlier coordinates. Tuples with equal prefixes and distinct
    last entries are collisions; the first member seen with a prefix represents it. Prefixes over at most 256
    elements are keyed by their bytes.
    """

    def __init__(self, stop_at_first, max_witnesses, size=256):
        self.stop_at_first = stop_at_first
        self.compact = size <= 256
        self.max_witnesses = max_witnesses
        self.first_last = {}
        self.pairs = set()
        self.witnesses = []
        self.collisions = 0

    def __call__(self, t, tuple_id):
        prefix = t[:-1]
        last = self.first_last.setdefault(bytes(prefix) if self.compact else prefix, t[-1])
        if last == t[-1]:
            return False
        self.collisions += 1
        self.pairs.add((last, t[-1]))
        if len(self.witnesses) < self.max_witnesses:
            self.witnesses.append(CollisionWitness(prefix + (last,), t))
        return self.stop_at_first


def _scan_collisions(A, theta_list, stop_at_first, budget):
    index = CollisionIndex(stop_at_first, int(default_config().get("engine", "max_witnesses")), A.size)
    S = cube(A, theta_list, budget=budget, observer=index)
    return S, index


def two_term_higher_commutator(A, theta_list, mode="exact", budget=None):
    """
    Computes the 2-term higher commutator [theta_1, ..., theta_k] from the members of M(theta_1, ..., theta_k) whose
    earlier coordinates coincide. The binary 2-term commutator is the case k = 2.

    :param FiniteAlgebra A: algebra.
    :param list theta_list: k >= 2 congruences of A.
    :param str mode: "exact" closes the cube and collects every collision; "zero-test" stops at the first one.
    :param Budget budget: closure limits, the configured default if None.
    :rtype: CommutatorResult
    """
    if len(theta_list) < 2:
        raise PreconditionError("the 2-term higher commutator needs k >= 2 congruences, got {}".format(
            len(theta_list)))
    if mode not in ("exact", "zero-test"):
        raise PreconditionError("unknown commutator mode {!r}".format(mode))
    zero_test = mode == "zero-test"
    S, index = _scan_collisions(A, theta_list, zero_test, budget)
    if zero_test and index.collisions:
        decided = Decision.ZERO_TEST_ONLY
    elif S.closed:
        decided = Decision.EXACT
    else:
        decided = Decision.UNKNOWN_BUDGET
    value = congruence_generated(A, sorted(index.pairs))
    logger.info("[%s] on %s (k=%d, %s): %s after %d cube members", ",".join(str(t) for t in theta_list), A.name,
                len(theta_list), mode, decided.value, len(S))
    return CommutatorResult(value, tuple(index.witnesses), decided, len(S), index.collisions)


class Answer(enum.Enum):
    """
    Three-valued answer of a decision procedure. UNKNOWN means the budget ran out before either outcome was proven.
    """
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SupernilpotenceResult:
    answer: Answer
    cls: int
    witness: CollisionWitness = None
    cube_size: int = 0
    termination: str = ""

    def to_dict(self):
        return {
            "answer": self.answer.value,
            "cls": self.cls,
            "cube_size": self.cube_size,
            "termination": self.termination,
            "witness": self.witness.to_dict() if self.witness else None,
        }

    def to_text(self):
        lines = ["supernilpotent: {}".format(self.answer.value), "cls: {}".format(self.cls),
                 "cube-size: {}".format(self.cube_size), "termination: {}".format(self.termination)]
        if self.witness is not None:
            lines.append("witness: {}".format(self.witness))
        return "\n".join(lines) + "\n"


def check_witness(S, witness):
    """
    Re-verifies a collision witness against a cube subpower: both tuples are members, their prefixes agree and their
    last entries differ.
    """
    s, t = witness.s, witness.t
    return (len(s) == len(t) == S.arity and S.contains(s) and S.contains(t) and s[:-1] == t[:-1]
            and s[-1] != t[-1])


def is_supernilpotent(A, theta, cls, budget=None):
    """
    Decides whether A is supernilpotent of class cls with respect to theta, that is whether the last coordinate of
    every member of M(theta, ..., theta) (k = cls + 1 copies) is a function of the earlier ones.

    :param FiniteAlgebra A: algebra.
    :param Partition theta: congruence of A.
    :param int cls: class, at least 1.
    :param Budget budget: closure limits, the configured default if None.
    :rtype: SupernilpotenceResult
    """
    if cls < 1:
        raise PreconditionError("supernilpotence class must be >= 1, got {}".format(cls))
    theta_list = [theta] * (cls + 1)
    S, index = _scan_collisions(A, theta_list, True, budget)
    if index.witnesses:
        witness = index.witnesses[0]
        if not check_witness(S, witness):
            raise InternalCheckError("collision witness {} failed re-verification".format(witness))
        answer = Answer.NO
    else:
        witness = None
        answer = Answer.YES if S.closed else Answer.UNKNOWN
    logger.info("supernilpotence of %s at class %d w.r.t. %s: %s (%d cube members)", A.name, cls, theta,
                answer.value, len(S))
    return SupernilpotenceResult(answer, cls, witness, len(S), S.termination.value)


# ------------------------- Term-condition commutator -------------------------
def tc_commutator(A, alpha, beta, budget=None):
    """
    Term-condition commutator [alpha, beta]: the least congruence delta such that every matrix m of M(alpha, beta)
    satisfies m00 delta m01 => m10 delta m11 and m00 delta m10 => m01 delta m11.

    :param FiniteAlgebra A: algebra.
    :param Partition alpha: congruence of A.
    :param Partition beta: congruence of A.
    :param Budget budget: closure limits for M(alpha, beta), the configured default if None.
    :rtype: Partition
    :raises BudgetExhaustedError: if M(alpha, beta) does not close within the budget.
    """
    S = cube(A, (alpha, beta), budget=budget)
    if not S.closed:
        raise BudgetExhaustedError("M({}, {}) over {} exceeded the closure budget".format(alpha, beta, A.name))
    matrices = S.rows().astype(np.int64)
    delta = Partition.zero(A.size)
    while True:
        labels = np.asarray(delta.labels, dtype=np.int64)
        rows_equal = labels[matrices[:, 0]] == labels[matrices[:, 1]]
        columns_equal = labels[matrices[:, 0]] == labels[matrices[:, 2]]
        forced = np.concatenate([matrices[rows_equal][:, [2, 3]], matrices[columns_equal][:, [1, 3]]])
        forced = np.unique(forced, axis=0) if len(forced) else forced
        seeds = [(x, label) for x, label in enumerate(delta.labels)]
        seeds.extend((int(a), int(b)) for a, b in forced)
        grown = congruence_generated(A, seeds)
        if grown == delta:
            return delta
        delta = grown


def nilpotence_class(A, max_cls):
    """
    Walks the lower central series 1, [1,1], [1,[1,1]], ... and returns the least i with gamma_(i+1) = 0.

    :param FiniteAlgebra A: algebra.
    :param int max_cls: largest class tried.
    :return: the nilpotence class, or None if it exceeds max_cls or the series stops descending.
    """
    one = Partition.one(A.size)
    gamma = one
    for i in range(1, max_cls + 1):
        following = tc_commutator(A, one, gamma)
        logger.debug("gamma_%d of %s = %s", i + 1, A.name, following)
        if following.is_zero():
            return i
        if following == gamma:
            return None
        gamma = following
    return None


def is_abelian(A):
    one = Partition.one(A.size)
    return tc_commutator(A, one, one).is_zero()


def verify_delta_centrality(A, theta):
    """
    Builds A(theta), the subalgebra of A^2 on the pairs of theta, and checks that splitting it into diagonal and
    off-diagonal pairs is a congruence of A(theta).

    :param FiniteAlgebra A: algebra.
    :param Partition theta: congruence of A.
    :rtype: bool
    """
    require_congruence(A, theta)
    S = generate(A, 2, list(theta.pairs()))
    A_theta = induced_algebra(S, name=A.name + "-theta")
    delta = Partition([u == v for u, v in S])
    return is_congruence(A_theta, delta)

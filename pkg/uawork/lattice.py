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
Partitions and subsets of a finite universe, congruence generation, the congruence and subuniverse lattices,
saturation, subdirectness and direct decomposability.

"""

import logging
from collections import deque

import numpy as np

from .closure import Budget, generate
from .errors import (InternalCheckError, NotACongruenceError, SizeGuardError, SizeMismatchError, ElementRangeError,
                     PreconditionError, WorkbenchError)
from .settings import default_config

__all__ = [
    "Partition",
    "Subset",
    "is_congruence",
    "require_congruence",
    "congruence_generated",
    "congruence_lattice",
    "join",
    "meet",
    "compose_is_full",
    "subuniverse_closure",
    "is_subuniverse",
    "all_subuniverses",
    "saturation",
    "is_subdirect",
    "class_index",
    "is_directly_indecomposable",
]

logger = logging.getLogger(__name__)


# ------------------------- Partition -------------------------
class Partition:
    """
    Equivalence relation on {0..n-1}, stored as one label per element. Labels are normalized so that each element's
    label is the minimum element of its block, which makes equal partitions compare equal.
    """

    __slots__ = ("_labels",)

    def __init__(self, labels):
        """
        :param labels: sequence assigning a hashable block label to every element.
        """
        representative = {}
        self._labels = tuple(representative.setdefault(label, x) for x, label in enumerate(labels))

    @classmethod
    def zero(cls, n):
        return cls(range(n))

    @classmethod
    def one(cls, n):
        return cls([0] * n)

    @classmethod
    def from_blocks(cls, n, blocks):
        """
        :param int n: universe size.
        :param blocks: iterable of element collections; elements not mentioned form singleton blocks.
        :raises WorkbenchError: if blocks overlap or mention elements outside [0, n).
        """
        labels = list(range(n))
        seen = set()
        for block in blocks:
            block = [int(x) for x in block]
            for x in block:
                if not 0 <= x < n:
                    raise ElementRangeError("element {} outside [0, {})".format(x, n))
                if x in seen:
                    raise WorkbenchError("element {} appears in two blocks".format(x))
                seen.add(x)
            for x in block:
                labels[x] = block[0]
        return cls(labels)

    @classmethod
    def parse(cls, text, n=None):
        """
        Parses the text form "0 3|1 4|2 5".

        :param str text: blocks joined by "|", elements by spaces.
        :param int n: universe size, by default one more than the largest element; the blocks must then cover it.
        """
        try:
            blocks = [[int(x) for x in block.split()] for block in text.split("|")]
        except ValueError:
            raise WorkbenchError("malformed partition {!r}".format(text))
        if any(not block for block in blocks):
            raise WorkbenchError("malformed partition {!r}".format(text))
        if n is None:
            n = 1 + max(max(block) for block in blocks)
            if sum(len(block) for block in blocks) != n:
                raise WorkbenchError("partition {!r} does not cover 0..{}".format(text, n - 1))
        return cls.from_blocks(n, blocks)

    @property
    def size(self):
        return len(self._labels)

    @property
    def labels(self):
        return self._labels

    def blocks(self):
        """
        Returns the blocks as tuples, sorted by minimum element, elements ascending.
        """
        blocks = {}
        for x, label in enumerate(self._labels):
            blocks.setdefault(label, []).append(x)
        return [tuple(blocks[label]) for label in sorted(blocks)]

    @property
    def num_blocks(self):
        return len(set(self._labels))

    def related(self, a, b):
        return self._labels[a] == self._labels[b]

    def pairs(self):
        """
        Yields every ordered pair (u, v) of related elements, u ascending then v ascending.
        """
        blocks = {x: block for block in self.blocks() for x in block}
        for u in range(self.size):
            for v in blocks[u]:
                yield u, v

    def is_zero(self):
        return self.num_blocks == self.size

    def is_one(self):
        return self.num_blocks <= 1

    def __le__(self, other):
        _check_sizes(self, other)
        return all(other._labels[x] == other._labels[label] for x, label in enumerate(self._labels))

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        return isinstance(other, Partition) and self._labels == other._labels

    def __hash__(self):
        return hash(self._labels)

    def sort_key(self):
        return -self.num_blocks, self._labels

    def __str__(self):
        return "|".join(" ".join(str(x) for x in block) for block in self.blocks())

    def __repr__(self):
        return "Partition({!r})".format(str(self))


def _check_sizes(p, q):
    if p.size != q.size:
        raise SizeMismatchError("partitions of {} and {} elements".format(p.size, q.size))


# ------------------------- Subset -------------------------
class Subset:
    """
    Subset of {0..n-1}.
    """

    __slots__ = ("_size", "_elements")

    def __init__(self, size, elements=()):
        elements = sorted({int(x) for x in elements})
        if elements and (elements[0] < 0 or elements[-1] >= size):
            raise ElementRangeError("subset {} outside [0, {})".format(elements, size))
        self._size = size
        self._elements = tuple(elements)

    @classmethod
    def full(cls, n):
        return cls(n, range(n))

    @classmethod
    def parse(cls, text, n):
        """
        Parses a comma-separated element list such as "0,3".
        """
        try:
            return cls(n, [int(x) for x in text.split(",") if x.strip()])
        except ValueError:
            raise WorkbenchError("malformed element list {!r}".format(text))

    @property
    def size(self):
        return self._size

    @property
    def elements(self):
        return self._elements

    @property
    def mask(self):
        mask = np.zeros(self._size, dtype=bool)
        mask[list(self._elements)] = True
        return mask

    def __contains__(self, x):
        return x in self._elements

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)

    def __eq__(self, other):
        return isinstance(other, Subset) and (self._size, self._elements) == (other._size, other._elements)

    def __hash__(self):
        return hash((self._size, self._elements))

    def sort_key(self):
        return len(self._elements), self._elements

    def __str__(self):
        return "{" + ",".join(str(x) for x in self._elements) + "}"

    def __repr__(self):
        return "Subset({}, {})".format(self._size, str(self))


# ------------------------- Merge-find -------------------------
class _MergeFind:
    """
    Union-find over {0..n-1} with path compression and union by rank.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        """
        :return: True if a and b were in different blocks.
        """
        a = self.find(a)
        b = self.find(b)
        if a == b:
            return False
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.parent[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        return True

    def partition(self):
        return Partition([self.find(x) for x in range(len(self.parent))])


# ------------------------- Congruences -------------------------
def _check_partition(A, theta):
    if theta.size != A.size:
        raise SizeMismatchError("partition on {} elements for an algebra of size {}".format(theta.size, A.size))


def is_congruence(A, theta):
    """
    Checks that every operation maps related argument tuples to related results. It suffices to check, one argument
    position at a time, that replacing an argument by its block representative keeps the result in the same block.

    :param FiniteAlgebra A: algebra.
    :param Partition theta: partition of the universe.
    :rtype: bool
    """
    _check_partition(A, theta)
    labels = np.asarray(theta.labels, dtype=np.int64)
    for symbol, arity, table in A.operations():
        images = labels[table]
        for position in range(arity):
            if not np.array_equal(images, labels[np.take(table, labels, axis=position)]):
                return False
    return True


def require_congruence(A, theta):
    """
    :raises NotACongruenceError: if theta is not a congruence of A.
    """
    if not is_congruence(A, theta):
        raise NotACongruenceError("{} is not a congruence of {}".format(theta, A.name))


def congruence_generated(A, pairs):
    """
    Computes the least congruence containing the given pairs. Every merge performed is queued; a queued pair (a, b) is
    pushed through every operation in every argument position over all frames of the other arguments, and the images
    are merged in turn.

    :param FiniteAlgebra A: algebra.
    :param pairs: iterable of element pairs.
    :rtype: Partition
    """
    uf = _MergeFind(A.size)
    worklist = deque()
    for a, b in pairs:
        a, b = int(a), int(b)
        if not (0 <= a < A.size and 0 <= b < A.size):
            raise ElementRangeError("pair ({}, {}) outside the universe of {}".format(a, b, A.name))
        if uf.union(a, b):
            worklist.append((a, b))
    operations = [(arity, table) for _, arity, table in A.operations() if arity > 0]
    while worklist:
        a, b = worklist.popleft()
        for arity, table in operations:
            for position in range(arity):
                left = np.take(table, a, axis=position).reshape(-1).tolist()
                right = np.take(table, b, axis=position).reshape(-1).tolist()
                for x, y in zip(left, right):
                    if x != y and uf.union(x, y):
                        worklist.append((x, y))
    return uf.partition()


def join(p, q):
    """
    Transitive closure of the union of two partitions.
    """
    _check_sizes(p, q)
    uf = _MergeFind(p.size)
    for x in range(p.size):
        uf.union(x, p.labels[x])
        uf.union(x, q.labels[x])
    return uf.partition()


def meet(p, q):
    """
    Common refinement of two partitions.
    """
    _check_sizes(p, q)
    return Partition(zip(p.labels, q.labels))


def compose_is_full(alpha, beta):
    """
    Checks whether the relational product alpha o beta is the full relation: every alpha-block meets every beta-block.
    """
    _check_sizes(alpha, beta)
    all_beta = set(beta.labels)
    return all({beta.labels[x] for x in block} == all_beta for block in alpha.blocks())


def _guard(n, bound, what):
    if n > bound:
        raise SizeGuardError("{} is limited to algebras of size <= {}, got {}".format(what, bound, n))


def congruence_lattice(A, max_size=None):
    """
    Returns every congruence of A: the zero congruence and all joins of principal congruences.

    :param FiniteAlgebra A: algebra.
    :param int max_size: size guard, congruence_lattice.max_size from the configuration if None.
    :return: congruences sorted by descending number of blocks, then by labels.
    :rtype: list[Partition]
    """
    if max_size is None:
        max_size = int(default_config().get("congruence_lattice", "max_size"))
    _guard(A.size, max_size, "congruence_lattice")
    principal = {congruence_generated(A, [(a, b)]) for a in range(A.size) for b in range(a + 1, A.size)}
    principal = sorted(principal, key=Partition.sort_key)
    lattice = set(principal) | {Partition.zero(A.size)}
    queue = deque(sorted(lattice, key=Partition.sort_key))
    while queue:
        current = queue.popleft()
        for p in principal:
            joined = join(current, p)
            if joined not in lattice:
                lattice.add(joined)
                queue.append(joined)
    logger.info("Con(%s) has %d congruences", A.name, len(lattice))
    return sorted(lattice, key=Partition.sort_key)


# ------------------------- Subuniverses -------------------------
_CLOSURE_BUDGET = Budget(1 << 62, 1 << 62)


def subuniverse_closure(A, S):
    """
    Least subuniverse containing S (all constants included), computed as the subpower of A^1 generated by S.

    :param FiniteAlgebra A: algebra.
    :param S: Subset or iterable of elements.
    :rtype: Subset
    """
    elements = sorted({int(x) for x in S})
    generated = generate(A, 1, [(x,) for x in elements], budget=_CLOSURE_BUDGET)
    return Subset(A.size, generated.rows()[:, 0].tolist())


def is_subuniverse(A, S):
    S = S if isinstance(S, Subset) else Subset(A.size, S)
    return subuniverse_closure(A, S) == S


def all_subuniverses(A, max_size=None):
    """
    Enumerates every subuniverse. Starting from the closure of the empty set, each closed set is extended by one
    missing element at a time and closed again. The empty set occurs only when the signature has no constants.

    :param FiniteAlgebra A: algebra.
    :param int max_size: size guard, all_subuniverses.max_size from the configuration if None.
    :return: subuniverses sorted by size, then elements.
    :rtype: list[Subset]
    """
    if max_size is None:
        max_size = int(default_config().get("all_subuniverses", "max_size"))
    _guard(A.size, max_size, "all_subuniverses")
    bottom = subuniverse_closure(A, ())
    found = {bottom}
    queue = deque([bottom])
    while queue:
        current = queue.popleft()
        for a in range(A.size):
            if a in current:
                continue
            extended = subuniverse_closure(A, current.elements + (a,))
            if extended not in found:
                found.add(extended)
                queue.append(extended)
    return sorted(found, key=Subset.sort_key)


def saturation(A, B, theta):
    """
    Union of the theta-classes meeting B. When B is a subuniverse, so is its saturation.

    :param FiniteAlgebra A: algebra.
    :param B: Subset or iterable of elements.
    :param Partition theta: congruence of A.
    :rtype: Subset
    """
    require_congruence(A, theta)
    B = B if isinstance(B, Subset) else Subset(A.size, B)
    touched = {theta.labels[b] for b in B}
    result = Subset(A.size, [x for x in range(A.size) if theta.labels[x] in touched])
    if is_subuniverse(A, B):
        if not is_subuniverse(A, result):
            raise InternalCheckError("saturation of a subuniverse must be a subuniverse")
    return result


def is_subdirect(A, D):
    """
    Checks that every coordinate projection of a subpower D of A^k is onto A.

    :param FiniteAlgebra A: algebra.
    :param Subpower D: subpower.
    :rtype: bool
    """
    if len(D) == 0:
        return False
    rows = D.rows()
    return all(len(np.unique(rows[:, i])) == A.size for i in range(D.arity))


def class_index(p, q):
    """
    Number of q-classes inside each p-class, when it is the same for all p-classes.

    :param Partition p: coarser partition.
    :param Partition q: partition refining p.
    :return: the common count, or None if it varies.
    :raises PreconditionError: if q does not refine p.
    """
    if not q <= p:
        raise PreconditionError("{} does not refine {}".format(q, p))
    counts = {}
    for x in range(p.size):
        counts.setdefault(p.labels[x], set()).add(q.labels[x])
    ratios = {len(inner) for inner in counts.values()}
    return ratios.pop() if len(ratios) == 1 else None


def is_directly_indecomposable(A, congruences=None):
    """
    Looks for a pair of congruences alpha, beta outside {0, 1} with alpha meet beta = 0, alpha join beta = 1 and
    alpha o beta = 1.

    :param FiniteAlgebra A: algebra.
    :param list congruences: Con(A) if already computed.
    :return: (True, None) if no such pair exists, else (False, (alpha, beta)) for the first pair found.
    :rtype: tuple
    """
    if congruences is None:
        congruences = congruence_lattice(A)
    zero, one = Partition.zero(A.size), Partition.one(A.size)
    proper = [c for c in congruences if c != zero and c != one]
    for i, alpha in enumerate(proper):
        for beta in proper[i + 1:]:
            if meet(alpha, beta) == zero and join(alpha, beta) == one and compose_is_full(alpha, beta):
                return False, (alpha, beta)
    return True, None

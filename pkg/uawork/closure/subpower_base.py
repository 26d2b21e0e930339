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
Main file for subpackage: closure.
The subpower engine: generates subalgebras of finite powers A^k from generator tuples by worklist closure, with an
interned tuple store, insertion observers and budgets.

"""

import enum
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from ..algebra import FiniteAlgebra
from ..errors import ArityMismatchError, ElementRangeError, NotASubuniverseError, WorkbenchError
from ..settings import default_config
from . import TupleCodec, TupleIndex, first_occurrences

__all__ = [
    "Budget",
    "Termination",
    "InsertionEvent",
    "Subpower",
    "SubpowerEngine",
    "generate",
    "project",
    "contains",
    "diagonal",
    "induced_algebra",
    "serialize_subpower",
]

logger = logging.getLogger(__name__)

_INITIAL_CAPACITY = 64


@dataclass(frozen=True)
class Budget:
    """
    Limits of one closure run: tuples interned by closure (generators excluded) and operation applications.
    """
    max_insertions: int
    max_op_applications: int

    def __post_init__(self):
        if self.max_insertions <= 0 or self.max_op_applications <= 0:
            raise WorkbenchError("budget limits must be positive, got {}".format(self))

    @classmethod
    def from_config(cls, config=None, section="budget"):
        """
        Builds a budget from a configuration section holding max_insertions and max_op_applications.

        :param WorkbenchConfig config: configuration, the packaged defaults if None.
        :param str section: section name.
        """
        config = config or default_config()
        return cls(int(config.get(section, "max_insertions")), int(config.get(section, "max_op_applications")))

    def override(self, max_insertions=None, max_op_applications=None):
        """
        Returns a copy with the given limits replaced. None keeps a limit; zero or negative values are rejected.

        :param int max_insertions: new insertion limit.
        :param int max_op_applications: new operation application limit.
        :rtype: Budget
        """
        return Budget(self.max_insertions if max_insertions is None else max_insertions,
                      self.max_op_applications if max_op_applications is None else max_op_applications)


class Termination(enum.Enum):
    """
    Why a closure run ended. Only CLOSED guarantees a subuniverse.
    """
    CLOSED = "closed"
    INSERTIONS_EXHAUSTED = "insertions-exhausted"
    OPS_EXHAUSTED = "op-applications-exhausted"
    STOPPED = "observer-stopped"


class InsertionEvent:
    """
    Event emitted once per newly interned tuple, in insertion order. Callbacks receive (tuple, id); a callback
    returning a truthy value asks the engine to stop.
    """

    def __init__(self):
        self.callbacks = list()

    def connect(self, callback):
        """
        Connect a callback function to the event.

        :param callable callback: callback(tuple, id) -> bool.
        """
        self.callbacks.append(callback)

    def emit(self, tuple_, tuple_id):
        """
        Emit event.

        :return: True if some callback asked to stop.
        """
        stop = False
        for cb in self.callbacks:
            if cb(tuple_, tuple_id):
                stop = True
        return stop

    def __bool__(self):
        return bool(self.callbacks)


class Subpower:
    """
    Interned, insertion-ordered set of k-tuples over a finite algebra. Tuple ids are dense and follow insertion order;
    generators come first, in the order given, without repetitions.
    """

    def __init__(self, algebra, k, dense_index_limit=None):
        """
        :param FiniteAlgebra algebra: base algebra.
        :param int k: tuple length.
        :param int dense_index_limit: largest n^k indexed by a flat id array, from the configuration if None.
        """
        if k < 1:
            raise ArityMismatchError("subpowers have positive arity, got {}".format(k))
        if dense_index_limit is None:
            dense_index_limit = int(default_config().get("engine", "dense_index_limit"))
        self.algebra = algebra
        self.arity = k
        self.codec = TupleCodec(algebra.size, k)
        self._index = TupleIndex(self.codec, dense_index_limit)
        self._rows = np.zeros((_INITIAL_CAPACITY, k), dtype=self.codec.dtype)
        self._count = 0
        self.generators = ()
        self.closed = False
        self.termination = None
        self.insertions_used = 0
        self.op_applications_used = 0

    # ---------------- Store ----------------
    def _append(self, rows, keys):
        """
        Interns rows known to be absent and pairwise distinct. Returns the id of the first one.
        """
        first_id = self._count
        needed = first_id + len(rows)
        if needed > len(self._rows):
            capacity = max(needed, 2 * len(self._rows))
            grown = np.zeros((capacity, self.arity), dtype=self._rows.dtype)
            grown[:first_id] = self._rows[:first_id]
            self._rows = grown
        self._rows[first_id:needed] = rows
        self._index.insert(keys, first_id)
        self._count = needed
        return first_id

    def _truncate(self, count):
        """
        Drops every tuple with id >= count.
        """
        if count >= self._count:
            return
        dropped = self._rows[count:self._count]
        self._index.remove(self.codec.keys(dropped))
        self._count = count

    def _absent(self, rows):
        """
        Returns the positions of rows that are new, first occurrences only, and their keys.
        """
        keys = self.codec.keys(rows)
        first = first_occurrences(keys)
        if isinstance(keys, np.ndarray):
            keys = keys[first]
            fresh = self._index.lookup(keys) < 0
            return first[fresh], keys[fresh]
        keys = [keys[i] for i in first]
        fresh = self._index.lookup(keys) < 0
        return first[fresh], [key for key, new in zip(keys, fresh) if new]

    def _freeze(self):
        self._rows = self._rows[:self._count].copy()
        self._rows.setflags(write=False)

    # ---------------- Queries ----------------
    def __len__(self):
        return self._count

    def __iter__(self):
        for row in self.rows():
            yield tuple(int(x) for x in row)

    def __contains__(self, t):
        return self.contains(t)

    def rows(self):
        """
        Returns the stored tuples as a read-only array of shape (size, k), in id order.
        """
        view = self._rows[:self._count]
        view = view.view()
        view.setflags(write=False)
        return view

    def tuple_at(self, tuple_id):
        """
        :param int tuple_id: dense id, 0 <= tuple_id < len(self).
        :return: the tuple as plain ints.
        """
        return tuple(int(x) for x in self._rows[tuple_id])

    def _checked_rows(self, rows):
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != self.arity:
            raise ArityMismatchError("expected {}-tuples".format(self.arity))
        if rows.size and (rows.min() < 0 or rows.max() >= self.algebra.size):
            raise ElementRangeError("tuple entries outside the universe of {}".format(self.algebra.name))
        return rows.astype(self.codec.dtype)

    def ids_of(self, rows):
        """
        Returns the ids of a batch of tuples, -1 for non-members.

        :param rows: array-like of shape (m, k).
        :rtype: numpy.ndarray
        """
        rows = self._checked_rows(rows)
        if len(rows) == 0:
            return np.zeros(0, dtype=np.int64)
        return self._index.lookup(self.codec.keys(rows))

    def id_of(self, t):
        """
        :return: the id of a tuple, or None if it is not a member.
        """
        tuple_id = int(self.ids_of([t])[0])
        return None if tuple_id < 0 else tuple_id

    def contains(self, t):
        """
        :param t: k-tuple of elements.
        :return: membership in the store.
        :raises ArityMismatchError: if len(t) != k.
        """
        return self.id_of(t) is not None

    def sorted_tuples(self):
        return sorted(self)

    def __repr__(self):
        return "Subpower(k={}, size={}, closed={})".format(self.arity, self._count, self.closed)


def _combination_blocks(i, arity):
    """
    Yields the argument id combinations over [0..i] that contain i, in lexicographic order, grouped into blocks.
    Each block is a tuple of `arity` id arrays of a common length.
    """
    if arity == 1:
        yield (np.array([i], dtype=np.int64),)
        return
    if arity == 2:
        if i > 0:
            yield (np.arange(i, dtype=np.int64), np.full(i, i, dtype=np.int64))
        yield (np.full(i + 1, i, dtype=np.int64), np.arange(i + 1, dtype=np.int64))
        return
    full = np.arange(i + 1, dtype=np.int64)
    for prefix in itertools.product(range(i + 1), repeat=arity - 1):
        last = full if i in prefix else np.array([i], dtype=np.int64)
        yield tuple(np.full(len(last), p, dtype=np.int64) for p in prefix) + (last,)


class SubpowerEngine:
    """
    This engine generates the subalgebra of A^k generated by a list of tuples. It seeds the store with the generators
    and the constants, then processes tuples in id order: for tuple i it applies every operation (in signature order)
    to every argument combination over ids <= i that contains i (in lexicographic id order), interning new results.
    Each combination is therefore considered exactly once.
    """

    def __init__(self, algebra, k, budget=None, dense_index_limit=None):
        """
        :param FiniteAlgebra algebra: base algebra.
        :param int k: tuple length.
        :param Budget budget: closure limits, the configured default if None.
        :param int dense_index_limit: see Subpower.
        """
        self.algebra = algebra
        self.k = k
        self.budget = budget or Budget.from_config()
        self.dense_index_limit = dense_index_limit
        self.tuple_inserted = InsertionEvent()
        """Event for every newly interned tuple.

        :type: InsertionEvent """

    def add_observer(self, callback):
        """
        Adds a callback invoked as callback(tuple, id) for every newly interned tuple, generators included.
        """
        self.tuple_inserted.connect(callback)

    def _notify(self, S, first_id):
        """
        Emits the insertion event for ids first_id.. and truncates the store after a stop request.

        :return: True if an observer asked to stop.
        """
        if not self.tuple_inserted:
            return False
        for tuple_id in range(first_id, len(S)):
            if self.tuple_inserted.emit(S.tuple_at(tuple_id), tuple_id):
                S._truncate(tuple_id + 1)
                return True
        return False

    def _intern(self, S, rows, counted):
        """
        Interns the new rows of a batch, honouring the insertion budget when counted.

        :return: a Termination if the run must end, else None.
        """
        positions, keys = S._absent(rows)
        if len(positions) == 0:
            return None
        termination = None
        if counted:
            remaining = self.budget.max_insertions - S.insertions_used
            if len(positions) > remaining:
                positions, keys = positions[:remaining], keys[:remaining]
                termination = Termination.INSERTIONS_EXHAUSTED
            S.insertions_used += len(positions)
            if len(positions) == 0:
                return termination
        first_id = S._append(rows[positions], keys)
        appended = len(S)
        if self._notify(S, first_id):
            if counted:
                S.insertions_used -= appended - len(S)
            return Termination.STOPPED
        return termination

    def generate(self, generators):
        """
        Runs the closure.

        :param generators: list of k-tuples.
        :return: the generated subpower, flagged closed only on natural termination.
        :rtype: Subpower
        """
        A = self.algebra
        S = Subpower(A, self.k, self.dense_index_limit)
        generators = [tuple(g) for g in generators]
        if any(len(g) != self.k for g in generators):
            raise ArityMismatchError("all generators must be {}-tuples".format(self.k))
        seeds = S._checked_rows(np.array(generators, dtype=np.int64).reshape(-1, self.k))
        termination = self._intern(S, seeds, counted=False) if len(seeds) else None
        S.generators = tuple(S.tuple_at(i) for i in range(len(S)))

        operations = [(symbol, arity, table) for symbol, arity, table in A.operations() if arity > 0]
        constants = [table for _, arity, table in A.operations() if arity == 0]
        if termination is None and constants:
            S.op_applications_used += len(constants)
            rows = np.array([[int(table[()])] * self.k for table in constants], dtype=S.codec.dtype)
            termination = self._intern(S, rows, counted=True)

        processed = 0
        while termination is None and processed < len(S):
            i = processed
            for symbol, arity, table in operations:
                for block in _combination_blocks(i, arity):
                    size = len(block[0])
                    remaining = self.budget.max_op_applications - S.op_applications_used
                    if size > remaining:
                        block = tuple(ids[:remaining] for ids in block)
                        size = remaining
                        termination = Termination.OPS_EXHAUSTED
                    S.op_applications_used += size
                    if size:
                        stored = S._rows
                        rows = table[tuple(stored[ids] for ids in block)].astype(S.codec.dtype)
                        termination = self._intern(S, rows, counted=True) or termination
                    if termination is not None:
                        break
                if termination is not None:
                    break
            processed += 1
            if processed % 4096 == 0:
                logger.debug("processed %d of %d tuples, %d op applications", processed, len(S),
                             S.op_applications_used)

        S.termination = termination or Termination.CLOSED
        S.closed = S.termination is Termination.CLOSED
        S._freeze()
        if S.termination in (Termination.INSERTIONS_EXHAUSTED, Termination.OPS_EXHAUSTED):
            logger.warning("closure in %s^%d stopped by budget (%s) at %d tuples", A.name, self.k,
                           S.termination.value, len(S))
        else:
            logger.info("closure in %s^%d: %d tuples from %d generators, %s", A.name, self.k, len(S),
                        len(S.generators), S.termination.value)
        return S


def generate(A, k, generators, budget=None, observer=None):
    """
    Generates the subalgebra of A^k generated by the given tuples.

    :param FiniteAlgebra A: base algebra.
    :param int k: tuple length.
    :param generators: list of k-tuples.
    :param Budget budget: closure limits, the configured default if None.
    :param observer: optional callable(tuple, id) -> bool, or a list of them.
    :rtype: Subpower
    """
    engine = SubpowerEngine(A, k, budget)
    if observer is not None:
        for cb in (observer if isinstance(observer, (list, tuple)) else [observer]):
            engine.add_observer(cb)
    return engine.generate(generators)


def project(S, coords):
    """
    Projects a subpower onto a list of coordinates. The projection of a closed subpower is closed.

    :param Subpower S: subpower.
    :param list coords: coordinate indices in [0, k).
    :rtype: Subpower
    """
    coords = [int(c) for c in coords]
    if not coords or any(not 0 <= c < S.arity for c in coords):
        raise ArityMismatchError("projection coordinates {} outside [0, {})".format(coords, S.arity))
    P = Subpower(S.algebra, len(coords))
    rows = S.rows()[:, coords]
    positions, keys = P._absent(rows)
    if len(positions):
        P._append(rows[positions], keys)
    generator_rows = np.array(S.generators, dtype=np.int64).reshape(-1, S.arity)[:, coords]
    P.generators = tuple(dict.fromkeys(tuple(int(x) for x in row) for row in generator_rows))
    P.closed = S.closed
    P.termination = S.termination
    P._freeze()
    return P


def contains(S, t):
    """
    Membership of the k-tuple t in the subpower S.
    """
    return S.contains(t)


def diagonal(A, k):
    """
    Returns the closed diagonal subpower {(a, ..., a)} of A^k.
    """
    return generate(A, k, [(a,) * k for a in range(A.size)])


def induced_algebra(S, name=None):
    """
    Returns the abstract algebra on the tuples of a closed subpower; element i is the tuple with id i.

    :param Subpower S: closed subpower.
    :param str name: algebra name, "<A>-subpower" by default.
    :rtype: FiniteAlgebra
    :raises NotASubuniverseError: if S is empty or not closed under the operations.
    """
    m = len(S)
    if m == 0:
        raise NotASubuniverseError("an empty subpower does not carry an algebra")
    stored = S.rows().astype(np.int64)
    tables = {}
    for symbol, arity, table in S.algebra.operations():
        if arity == 0:
            values = np.full((1, S.arity), int(table[()]), dtype=np.int64)
        else:
            grid = np.indices((m,) * arity).reshape(arity, -1)
            values = table[tuple(stored[axis] for axis in grid)]
        ids = S.ids_of(values)
        if np.any(ids < 0):
            raise NotASubuniverseError("subpower is not closed under {!r}".format(symbol))
        tables[symbol] = ids
    return FiniteAlgebra(name or S.algebra.name + "-subpower", m, S.algebra.signature, tables)


def serialize_subpower(S):
    """
    Writes a subpower as a header line followed by one space-separated tuple per line, in id order.
    """
    out = ["subpower k={} size={} closed={}".format(S.arity, len(S), "true" if S.closed else "false")]
    out.extend(" ".join(str(x) for x in t) for t in S)
    return "\n".join(out) + "\n"

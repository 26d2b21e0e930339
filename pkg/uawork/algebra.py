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
Finite algebras given by operation tables: the Signature and FiniteAlgebra types, the algebra file format,
pointwise and componentwise evaluation, quotients, subalgebras, direct products and the built-in corpus.

Elements of an algebra of size n are the integers 0..n-1. A table of an operation of arity r is stored as a
read-only numpy array of shape (n,)*r, so the flat row-major order of the file format (leftmost argument varying
slowest) is numpy's C order.

"""

import itertools
import logging
import os
import re

import numpy as np

from .errors import (AlgebraFormatError, SignatureError, ElementRangeError, ArityMismatchError,
                     NotASubuniverseError, UnknownAlgebraError)
from .settings import ALGEBRA_CORPUS_DIR

__all__ = [
    "Signature",
    "FiniteAlgebra",
    "parse_algebra",
    "serialize_algebra",
    "load_algebra",
    "eval_op",
    "eval_componentwise",
    "quotient_algebra",
    "subalgebra",
    "direct_product",
    "group_algebra",
    "unary_algebras",
    "builtin",
    "BUILTIN_NAMES",
]

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^\S+$")


class Signature:
    """
    Ordered list of operation symbols with their arities.
    """

    def __init__(self, symbols):
        """
        :param symbols: iterable of (name, arity) pairs.
        :raises SignatureError: on duplicate names, negative arities or names containing whitespace.
        """
        symbols = tuple((str(name), int(arity)) for name, arity in symbols)
        seen = set()
        for name, arity in symbols:
            if not _TOKEN.match(name):
                raise SignatureError("invalid operation symbol {!r}".format(name))
            if name in seen:
                raise SignatureError("duplicate operation symbol {!r}".format(name))
            if arity < 0:
                raise SignatureError("operation {!r} has negative arity {}".format(name, arity))
            seen.add(name)
        self._symbols = symbols
        self._arity = dict(symbols)

    @property
    def symbols(self):
        return self._symbols

    def arity(self, name):
        """
        :param str name: operation symbol.
        :return: arity of the symbol.
        :raises SignatureError: if the symbol is unknown.
        """
        try:
            return self._arity[name]
        except KeyError:
            raise SignatureError("unknown operation symbol {!r}".format(name))

    def __iter__(self):
        return iter(self._symbols)

    def __len__(self):
        return len(self._symbols)

    def __contains__(self, name):
        return name in self._arity

    def __eq__(self, other):
        return isinstance(other, Signature) and self._symbols == other._symbols

    def __hash__(self):
        return hash(self._symbols)

    def __repr__(self):
        return "Signature({})".format(", ".join("{}/{}".format(n, a) for n, a in self._symbols))


class FiniteAlgebra:
    """
    Immutable finite algebra with universe {0, ..., size-1} and one table per operation symbol.
    """

    def __init__(self, name, size, signature, tables):
        """
        :param str name: algebra name, a single token.
        :param int size: universe size n >= 1.
        :param signature: Signature or iterable of (name, arity) pairs.
        :param dict tables: symbol -> flat sequence of n^arity entries (or an array of shape (n,)*arity).
        :raises SignatureError: if the tables do not match the signature.
        :raises ElementRangeError: if an entry lies outside [0, n).
        """
        if not _TOKEN.match(str(name)):
            raise SignatureError("invalid algebra name {!r}".format(name))
        size = int(size)
        if size < 1:
            raise ElementRangeError("algebra size must be positive, got {}".format(size))
        if not isinstance(signature, Signature):
            signature = Signature(signature)
        if set(tables) != {symbol for symbol, _ in signature}:
            raise SignatureError("tables do not match the signature {!r}".format(signature))
        self._name = str(name)
        self._size = size
        self._signature = signature
        self._tables = {}
        for symbol, arity in signature:
            table = np.asarray(tables[symbol], dtype=np.int64).reshape(-1)
            if table.size != size ** arity:
                raise SignatureError("table of {!r} has {} entries, expected {}".format(symbol, table.size,
                                                                                       size ** arity))
            if table.size and (table.min() < 0 or table.max() >= size):
                raise ElementRangeError("table of {!r} has entries outside [0, {})".format(symbol, size))
            table = table.reshape((size,) * arity)
            table.setflags(write=False)
            self._tables[symbol] = table

    @property
    def name(self):
        return self._name

    @property
    def size(self):
        return self._size

    @property
    def signature(self):
        return self._signature

    def table(self, symbol):
        """
        Returns the read-only table of an operation as an array of shape (n,)*arity.

        :param str symbol: operation symbol.
        :raises SignatureError: if the symbol is unknown.
        """
        self._signature.arity(symbol)
        return self._tables[symbol]

    def operations(self):
        """
        Yields (symbol, arity, table) in signature order.
        """
        for symbol, arity in self._signature:
            yield symbol, arity, self._tables[symbol]

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self._name == other._name and self._size == other._size
                and self._signature == other._signature
                and all(np.array_equal(self._tables[s], other._tables[s]) for s, _ in self._signature))

    def __hash__(self):
        return hash((self._name, self._size, self._signature))

    def __repr__(self):
        return "FiniteAlgebra({!r}, size={}, {!r})".format(self._name, self._size, self._signature)


# ------------------------- Algebra file format -------------------------
def _parse_int(token, lineno, what):
    try:
        return int(token)
    except ValueError:
        raise AlgebraFormatError("{} must be an integer, got {!r}".format(what, token), lineno)


def parse_algebra(text):
    """
    Parses an algebra in the text format::

        # comment
        algebra <name>
        size <n>
        op <name> <arity>
        <n^arity whitespace-separated integers>

    Table entries of one op block may span several lines.

    :param str text: file contents.
    :return: parsed algebra.
    :rtype: FiniteAlgebra
    :raises AlgebraFormatError: on any malformed line, with its line number.
    """
    name = None
    size = None
    symbols = []
    tables = {}
    current = None
    pending = []
    expected = 0
    current_lineno = None

    def close_block(lineno):
        if current is not None and len(pending) != expected:
            raise AlgebraFormatError("table of {!r} has {} entries, expected {}".format(current, len(pending),
                                                                                       expected), lineno)

    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        if name is None:
            if words[0] != "algebra" or len(words) != 2:
                raise AlgebraFormatError("expected header 'algebra <name>'", lineno)
            name = words[1]
        elif size is None:
            if words[0] != "size" or len(words) != 2:
                raise AlgebraFormatError("expected 'size <n>'", lineno)
            size = _parse_int(words[1], lineno, "size")
            if size < 1:
                raise AlgebraFormatError("size must be positive", lineno)
        elif words[0] == "op":
            close_block(lineno)
            if len(words) != 3:
                raise AlgebraFormatError("expected 'op <name> <arity>'", lineno)
            symbol = words[1]
            arity = _parse_int(words[2], lineno, "arity")
            if arity < 0:
                raise AlgebraFormatError("arity must be non-negative", lineno)
            if symbol in tables:
                raise AlgebraFormatError("duplicate operation {!r}".format(symbol), lineno)
            current, expected, current_lineno = symbol, size ** arity, lineno
            pending = []
            symbols.append((symbol, arity))
            tables[symbol] = pending
        else:
            if current is None:
                raise AlgebraFormatError("table entries before any 'op' line", lineno)
            for word in words:
                entry = _parse_int(word, lineno, "table entry")
                if not 0 <= entry < size:
                    raise AlgebraFormatError("table entry {} out of range [0, {})".format(entry, size), lineno)
                if len(pending) == expected:
                    raise AlgebraFormatError("table of {!r} has more than {} entries".format(current, expected),
                                             lineno)
                pending.append(entry)
    if name is None or size is None:
        raise AlgebraFormatError("missing 'algebra' or 'size' header", len(lines) or 1)
    close_block(len(lines))
    logger.debug("parsed algebra %s of size %d with %d operations", name, size, len(symbols))
    try:
        return FiniteAlgebra(name, size, symbols, tables)
    except (SignatureError, ElementRangeError) as e:
        raise AlgebraFormatError(str(e), current_lineno)


def serialize_algebra(A):
    """
    Writes an algebra in the text format read by parse_algebra. Tables of arity >= 2 are written one row of n entries
    per line.

    :param FiniteAlgebra A: algebra to serialize.
    :rtype: str
    """
    out = ["algebra {}".format(A.name), "size {}".format(A.size)]
    for symbol, arity, table in A.operations():
        out.append("op {} {}".format(symbol, arity))
        flat = table.reshape(-1)
        if arity <= 1:
            out.append(" ".join(str(int(x)) for x in flat))
        else:
            for row in flat.reshape(-1, A.size):
                out.append(" ".join(str(int(x)) for x in row))
    return "\n".join(out) + "\n"


def load_algebra(source):
    """
    Loads an algebra from a file path, or from the built-in corpus when no such file exists.

    :param str source: path to an algebra file, or a built-in name with or without the ".alg" suffix.
    :rtype: FiniteAlgebra
    :raises UnknownAlgebraError: if neither a file nor a built-in of that name exists.
    """
    if os.path.isfile(source):
        with open(source, "r") as fstream:
            return parse_algebra(fstream.read())
    stem = os.path.basename(source)
    if stem.endswith(".alg"):
        stem = stem[:-4]
    corpus_file = os.path.join(ALGEBRA_CORPUS_DIR, stem + ".alg")
    if os.path.isfile(corpus_file):
        with open(corpus_file, "r") as fstream:
            return parse_algebra(fstream.read())
    return builtin(stem)


# ------------------------- Evaluation -------------------------
def _check_elements(A, args):
    for a in args:
        if not 0 <= a < A.size:
            raise ElementRangeError("element {} outside the universe of {}".format(a, A.name))


def eval_op(A, symbol, args):
    """
    Evaluates an operation by table lookup.

    :param FiniteAlgebra A: algebra.
    :param str symbol: operation symbol.
    :param args: sequence of elements, one per argument.
    :return: table value at the row-major index of args.
    :rtype: int
    """
    arity = A.signature.arity(symbol)
    args = tuple(int(a) for a in args)
    if len(args) != arity:
        raise ArityMismatchError("{!r} takes {} arguments, got {}".format(symbol, arity, len(args)))
    _check_elements(A, args)
    return int(A.table(symbol)[args])


def eval_componentwise(A, symbol, args, k=None):
    """
    Applies an operation coordinatewise to tuples of a common length k.

    :param FiniteAlgebra A: algebra.
    :param str symbol: operation symbol.
    :param args: sequence of tuples, one per argument.
    :param int k: tuple length; only needed for nullary symbols.
    :return: the resulting k-tuple.
    :rtype: tuple
    """
    arity = A.signature.arity(symbol)
    if len(args) != arity:
        raise ArityMismatchError("{!r} takes {} arguments, got {}".format(symbol, arity, len(args)))
    if arity == 0:
        if k is None:
            raise ArityMismatchError("tuple length k is required for the nullary symbol {!r}".format(symbol))
        return (int(A.table(symbol)[()]),) * k
    lengths = {len(t) for t in args}
    if len(lengths) != 1:
        raise ArityMismatchError("tuples of mixed arities {}".format(sorted(lengths)))
    matrix = np.array(args, dtype=np.int64).reshape(arity, -1)
    if matrix.size and (matrix.min() < 0 or matrix.max() >= A.size):
        raise ElementRangeError("tuple entries outside the universe of {}".format(A.name))
    return tuple(int(x) for x in A.table(symbol)[tuple(matrix)])


# ------------------------- Constructions -------------------------
def _reindexed(A, name, elements, image_index):
    """
    Builds the algebra on the given elements with every table value passed through image_index.
    """
    elements = np.asarray(elements, dtype=np.int64)
    tables = {}
    for symbol, arity, table in A.operations():
        if arity == 0:
            tables[symbol] = [image_index[int(table[()])]]
        else:
            tables[symbol] = image_index[table[np.ix_(*([elements] * arity))]].reshape(-1)
    return FiniteAlgebra(name, len(elements), A.signature, tables)


def quotient_algebra(A, theta, name=None):
    """
    Forms the quotient by a congruence. The classes are indexed 0..m-1 in the order of their minimal elements.

    :param FiniteAlgebra A: algebra.
    :param Partition theta: congruence of A.
    :param str name: name of the quotient, by default "<A>-quotient".
    :rtype: FiniteAlgebra
    :raises NotACongruenceError: if theta is not a congruence of A.
    """
    from .lattice import require_congruence
    require_congruence(A, theta)
    labels = np.asarray(theta.labels, dtype=np.int64)
    representatives = np.unique(labels)
    class_index = np.zeros(A.size, dtype=np.int64)
    class_index[representatives] = np.arange(len(representatives))
    return _reindexed(A, name or A.name + "-quotient", representatives, class_index[labels])


def subalgebra(A, subset, name=None):
    """
    Restricts an algebra to a subuniverse, re-indexed by ascending element order.

    :param FiniteAlgebra A: algebra.
    :param subset: iterable of elements (or a Subset) forming a subuniverse.
    :param str name: name of the subalgebra, by default "<A>-sub".
    :rtype: FiniteAlgebra
    :raises NotASubuniverseError: if the subset is empty or not closed.
    """
    elements = sorted({int(a) for a in subset})
    if not elements:
        raise NotASubuniverseError("an algebra cannot have an empty universe")
    _check_elements(A, elements)
    position = np.full(A.size, -1, dtype=np.int64)
    position[elements] = np.arange(len(elements))
    for symbol, arity, table in A.operations():
        values = table[()] if arity == 0 else table[np.ix_(*([elements] * arity))]
        if np.any(position[values] < 0):
            raise NotASubuniverseError("{} is not closed under {!r}".format(elements, symbol))
    return _reindexed(A, name or A.name + "-sub", elements, position)


def direct_product(A, B, name=None):
    """
    Direct product of two algebras of the same signature. The pair (a, b) is the element a*|B| + b.

    :rtype: FiniteAlgebra
    :raises SignatureError: if the signatures differ.
    """
    if A.signature != B.signature:
        raise SignatureError("cannot multiply algebras of signatures {!r} and {!r}".format(A.signature,
                                                                                         B.signature))
    m = B.size
    size = A.size * m
    tables = {}
    for symbol, arity, table in A.operations():
        if arity == 0:
            tables[symbol] = [int(table[()]) * m + int(B.table(symbol)[()])]
            continue
        grid = np.indices((size,) * arity)
        left = tuple(axis // m for axis in grid)
        right = tuple(axis % m for axis in grid)
        tables[symbol] = (table[left] * m + B.table(symbol)[right]).reshape(-1)
    return FiniteAlgebra(name or "{}x{}".format(A.name, B.name), size, A.signature, tables)


def group_algebra(name, elements, multiply, symbols=("*", "inv", "e")):
    """
    Builds the algebra (G; multiplication, inverse, identity) of a finite group.

    :param str name: algebra name.
    :param list elements: the group elements, hashable; element i of the algebra is elements[i].
    :param callable multiply: the group multiplication on elements.
    :param tuple symbols: names of the binary, unary and nullary symbols.
    :rtype: FiniteAlgebra
    """
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    mul = [index[multiply(x, y)] for x in elements for y in elements]
    identity = next(i for i, x in enumerate(elements) if all(multiply(x, y) == y for y in elements))
    inverse = [next(j for j in range(n) if mul[i * n + j] == identity) for i in range(n)]
    binary, unary, nullary = symbols
    return FiniteAlgebra(name, n, [(binary, 2), (unary, 1), (nullary, 0)],
                         {binary: mul, unary: inverse, nullary: [identity]})


def _cyclic(k):
    return group_algebra("cyclic-{}".format(k), list(range(k)), lambda x, y: (x + y) % k, symbols=("+", "-", "0"))


def _paper_z6():
    n = 6
    plus = [(x + y) % n for x in range(n) for y in range(n)]
    return FiniteAlgebra("paper-z6", n, [("+", 2), ("s", 1), ("c", 0)],
                         {"+": plus, "s": [0, 3, 3, 0, 3, 3], "c": [3]})


_QUATERNION_UNITS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def _quaternion_multiply(x, y):
    sign, unit = _QUATERNION_UNITS[(x[1], y[1])]
    return (x[0] * y[0] * sign, unit)


def _builtins():
    builtins = {
        "paper-z6": _paper_z6,
        "paper-b": lambda: subalgebra(_paper_z6(), [0, 3], name="paper-b"),
        "klein4": lambda: direct_product(_cyclic(2), _cyclic(2), name="klein4"),
        "sym3": lambda: group_algebra("sym3", sorted(itertools.permutations(range(3))),
                                      lambda p, q: tuple(p[q[i]] for i in range(3))),
        "dihedral-4": lambda: group_algebra("dihedral-4", [(i, j) for j in range(2) for i in range(4)],
                                            lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % 4, (x[1] + y[1]) % 2)),
        "quaternion-8": lambda: group_algebra("quaternion-8", [(s, u) for s in (1, -1) for u in "1ijk"],
                                              _quaternion_multiply),
    }
    return builtins


BUILTIN_NAMES = ("paper-z6", "paper-b", "cyclic-<k>", "klein4", "sym3", "dihedral-4", "quaternion-8")

_CYCLIC = re.compile(r"^cyclic-(\d+)$")
_MAX_CYCLIC = 64


def builtin(name):
    """
    Returns a named algebra from the built-in corpus.

    Known names: "paper-z6" (Z_6 with +, s, c), "paper-b" (its subalgebra on {0,3} re-indexed to {0,1}),
    "cyclic-<k>" (Z_k with +, -, 0), "klein4" (Z_2 x Z_2), and the groups "sym3", "dihedral-4", "quaternion-8".

    :param str name: algebra name.
    :rtype: FiniteAlgebra
    :raises UnknownAlgebraError: for any other name.
    """
    match = _CYCLIC.match(name)
    if match:
        k = int(match.group(1))
        if not 1 <= k <= _MAX_CYCLIC:
            raise UnknownAlgebraError("cyclic groups are built in for 1 <= k <= {}".format(_MAX_CYCLIC))
        return _cyclic(k)
    try:
        return _builtins()[name]()
    except KeyError:
        raise UnknownAlgebraError("unknown algebra {!r}; built-ins are {}".format(name, ", ".join(BUILTIN_NAMES)))


def unary_algebras(n, symbols):
    """
    Enumerates every algebra on n elements with the given number of unary operation symbols f0, f1, ...

    :param int n: universe size.
    :param int symbols: number of unary symbols.
    :return: generator of FiniteAlgebra, in lexicographic order of the tables.
    """
    names = ["f{}".format(i) for i in range(symbols)]
    maps = list(itertools.product(range(n), repeat=n))
    for number, choice in enumerate(itertools.product(maps, repeat=symbols)):
        yield FiniteAlgebra("unary-{}-{}-{}".format(n, symbols, number), n, [(f, 1) for f in names],
                            dict(zip(names, choice)))

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
Utility methods for the closure engine: element storage types, fixed-width tuple keys and the tuple index.

"""

import numpy as np

from ..errors import SizeGuardError

__all__ = ["MAX_ELEMENTS", "element_dtype", "TupleCodec", "TupleIndex", "first_occurrences"]

MAX_ELEMENTS = 1 << 16
_INT64_KEYS = 1 << 63


# ------------------------- Element storage -------------------------
def element_dtype(n):
    """
    Returns the narrowest unsigned dtype holding the elements 0..n-1.

    :param int n: universe size.
    :raises SizeGuardError: if n exceeds MAX_ELEMENTS.
    """
    if n <= 1 << 8:
        return np.uint8
    if n <= MAX_ELEMENTS:
        return np.uint16
    raise SizeGuardError("universes above {} elements are not supported by the closure engine".format(MAX_ELEMENTS))


# ------------------------- Tuple keys -------------------------
class TupleCodec:
    """
    Maps k-tuples over {0..n-1} to hashable keys. When n^k fits a signed 64-bit integer the key is the base-n numeral
    of the tuple (first coordinate most significant), so key order is lexicographic tuple order; otherwise the key is
    the tuple's byte string.
    """

    def __init__(self, n, k):
        """
        :param int n: universe size.
        :param int k: tuple length.
        """
        self.n = n
        self.k = k
        self.dtype = element_dtype(n)
        self.capacity = n ** k
        self.packed = self.capacity < _INT64_KEYS
        if self.packed:
            self.radix = np.array([n ** (k - 1 - i) for i in range(k)], dtype=np.int64)

    def keys(self, rows):
        """
        Returns the keys of a batch of tuples.

        :param numpy.ndarray rows: array of shape (m, k).
        :return: int64 array of shape (m,) when packed, else a list of bytes.
        """
        if self.packed:
            return rows.astype(np.int64) @ self.radix
        rows = np.ascontiguousarray(rows, dtype=self.dtype)
        return [row.tobytes() for row in rows]


class TupleIndex:
    """
    Associative index from tuple keys to dense ids. Uses a flat id array addressed by the packed key when n^k is at
    most dense_limit, and a dict otherwise.
    """

    def __init__(self, codec, dense_limit):
        """
        :param TupleCodec codec: key codec of the indexed tuples.
        :param int dense_limit: largest n^k indexed through a flat array.
        """
        self.codec = codec
        self.dense = codec.packed and codec.capacity <= dense_limit
        if self.dense:
            self._ids = np.full(codec.capacity, -1, dtype=np.int32 if codec.capacity < 1 << 31 else np.int64)
        else:
            self._ids = {}

    def lookup(self, keys):
        """
        Returns the ids of a batch of keys, -1 for absent keys.

        :rtype: numpy.ndarray
        """
        if self.dense:
            return self._ids[keys].astype(np.int64)
        get = self._ids.get
        if self.codec.packed:
            keys = keys.tolist()
        return np.fromiter((get(key, -1) for key in keys), dtype=np.int64, count=len(keys))

    def insert(self, keys, first_id):
        """
        Assigns consecutive ids first_id, first_id + 1, ... to a batch of keys that are not yet present.
        """
        if self.dense:
            self._ids[keys] = np.arange(first_id, first_id + len(keys), dtype=self._ids.dtype)
            return
        if self.codec.packed:
            keys = keys.tolist()
        self._ids.update(zip(keys, range(first_id, first_id + len(keys))))

    def remove(self, keys):
        if self.dense:
            self._ids[keys] = -1
            return
        if self.codec.packed:
            keys = keys.tolist()
        for key in keys:
            del self._ids[key]


def first_occurrences(keys):
    """
    Returns the positions of the first occurrence of every distinct key, in ascending position order.

    :param keys: int64 array or list of bytes.
    :rtype: numpy.ndarray
    """
    if isinstance(keys, np.ndarray):
        _, first = np.unique(keys, return_index=True)
        first.sort()
        return first
    seen = set()
    positions = []
    for position, key in enumerate(keys):
        if key not in seen:
            seen.add(key)
            positions.append(position)
    return np.array(positions, dtype=np.int64)



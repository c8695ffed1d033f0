"""Constant-time range minimum queries over a static integer array."""
from __future__ import annotations

from typing import Optional, Sequence

from ..errors import RangeError
from .counters import Counters


class RmqStructure:
    """Sparse table answering leftmost-minimum queries.

    ``query(l, r)`` returns the smallest index ``j`` in ``[l, r]`` with
    ``array[j]`` minimal. Build is O(n log n), queries are O(1).
    """

    __slots__ = ("array", "_table")

    def __init__(self, array: Sequence[int]):
        self.array = list(array)
        n = len(self.array)
        level = list(range(n))
        self._table = [level]
        span = 1
        while 2 * span <= n:
            prev = level
            arr = self.array
            level = []
            for i in range(n - 2 * span + 1):
                a = prev[i]
                b = prev[i + span]
                level.append(b if arr[b] < arr[a] else a)
            self._table.append(level)
            span *= 2

    def __len__(self) -> int:
        return len(self.array)

    def query(self, l: int, r: int, counters: Optional[Counters] = None) -> int:
        if not 0 <= l <= r < len(self.array):
            raise RangeError(f"invalid interval [{l}, {r}] for length {len(self.array)}")
        if counters is not None:
            counters.rmq += 1
        k = (r - l + 1).bit_length() - 1
        row = self._table[k]
        a = row[l]
        b = row[r - (1 << k) + 1]
        return b if self.array[b] < self.array[a] else a

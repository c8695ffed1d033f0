"""Static predecessor search, plain and batched.

``SortedArrayPredecessor`` is the default single-query structure (binary
search, O(log n)). ``BatchedPredecessor`` answers a sorted batch ``P`` of
queries by descending a conceptual binary trie over the universe to the
level where each subset's universe has size about ``u / |P|``, then asking
the small per-node structure. Any object with the single-query interface
can be swapped in behind the batched reduction.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

from ..errors import ContractError
from .counters import Counters


class PredecessorStructure(Protocol):
    values: Sequence[int]

    def pred_index(self, x: int, counters: Optional[Counters] = None) -> int: ...


class SortedArrayPredecessor:
    """Binary search over a sorted array.

    ``pred(x)`` is ``max{s in S : s <= x}`` (inclusive) and ``succ(x)`` is
    ``min{s in S : s >= x}``; both return ``None`` when no element qualifies.
    """

    __slots__ = ("values", "universe")

    def __init__(self, values: Sequence[int], universe: Optional[int] = None):
        self.values = list(values)
        self.universe = universe if universe is not None else (self.values[-1] + 1 if self.values else 1)

    def __len__(self) -> int:
        return len(self.values)

    def pred_index(self, x: int, counters: Optional[Counters] = None) -> int:
        """Index of the predecessor of ``x``, or -1."""
        if counters is not None:
            counters.pred += 1
        return bisect_right(self.values, x) - 1

    def pred(self, x: int, counters: Optional[Counters] = None) -> Optional[int]:
        i = self.pred_index(x, counters)
        return self.values[i] if i >= 0 else None

    def succ(self, x: int, counters: Optional[Counters] = None) -> Optional[int]:
        i = self.pred_index(x - 1, counters) + 1
        return self.values[i] if i < len(self.values) else None


def _pad_universe(u: int) -> int:
    u = max(u, 2)
    return 1 << (u - 1).bit_length()


@dataclass
class BatchStats:
    """Per-call record of how batches were answered."""

    batches: int = 0
    levels: list[int] = field(default_factory=list)
    batch_sizes: list[int] = field(default_factory=list)
    deep_queries: list[int] = field(default_factory=list)
    merge_lengths: list[int] = field(default_factory=list)
    group_scans: int = 0


@dataclass
class _TrieNode:
    lo: int  # index in S of min(S(v))
    hi: int  # index in S of max(S(v))
    reps: SortedArrayPredecessor  # representatives of groups whose max lies in S(v)
    rep_groups: list[int]  # global group index per representative


class BatchedPredecessor:
    """Batched predecessor queries via trie levels and grouped representatives.

    :param values: sorted distinct integers ``S``
    :param universe: universe size ``u``; padded up to a power of two
    """

    def __init__(self, values: Sequence[int], universe: int):
        self.values = list(values)
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ContractError("batched predecessor set must be strictly increasing")
        if self.values and (self.values[0] < 0 or self.values[-1] >= universe):
            raise ContractError("values must lie in [0, universe)")
        self.universe = _pad_universe(universe)
        self.bits = self.universe.bit_length() - 1
        self.group_size = max(1, self.bits)
        n = len(self.values)
        g = self.group_size
        self.group_max = [min(j + g, n) - 1 for j in range(0, n, g)]
        # levels[i] maps a prefix of length i to its trie node
        self.levels: list[dict[int, _TrieNode]] = []
        self.level_lists: list[list[tuple[int, int, int]]] = []
        for i in range(self.bits + 1):
            shift = self.bits - i
            nodes: dict[int, _TrieNode] = {}
            lst: list[tuple[int, int, int]] = []
            j = 0
            while j < n:
                prefix = self.values[j] >> shift
                k = j
                while k + 1 < n and (self.values[k + 1] >> shift) == prefix:
                    k += 1
                first_group = j // g
                last_group = k // g
                groups = [grp for grp in range(first_group, last_group + 1) if self.group_max[grp] <= k]
                reps = SortedArrayPredecessor([self.values[self.group_max[grp]] for grp in groups])
                nodes[prefix] = _TrieNode(j, k, reps, groups)
                # entries: (value, 0=min/1=max, prefix); min sorts before max on ties
                lst.append((self.values[j], 0, prefix))
                lst.append((self.values[k], 1, prefix))
                j = k + 1
            self.levels.append(nodes)
            self.level_lists.append(lst)

    def __len__(self) -> int:
        return len(self.values)

    def space(self) -> int:
        """Words stored by the per-node structures and level lists."""
        words = 0
        for nodes, lst in zip(self.levels, self.level_lists):
            words += len(lst)
            for node in nodes.values():
                words += 2 + 2 * len(node.rep_groups)
        return words + len(self.values)

    def choose_level(self, batch_size: int) -> int:
        """Deepest level ``i`` with ``2**(i+1) <= batch_size`` (0 for tiny batches)."""
        level = max(batch_size.bit_length() - 2, 0)
        return min(level, self.bits)

    def _node_query(self, node: _TrieNode, x: int, stats: Optional[BatchStats]) -> int:
        r = node.reps.pred_index(x)
        if r >= 0:
            grp = node.rep_groups[r]
            last = self.group_max[grp]
            if self.values[last] == x:
                return last
            scan_group = grp + 1
            fallback = last
        else:
            scan_group = node.lo // self.group_size
            fallback = -1
        if stats is not None:
            stats.group_scans += 1
        best = fallback
        start = scan_group * self.group_size
        if scan_group < len(self.group_max):
            for idx in range(start, self.group_max[scan_group] + 1):
                if self.values[idx] <= x:
                    best = idx
                else:
                    break
        return best

    def query_indices(
        self,
        batch: Sequence[int],
        counters: Optional[Counters] = None,
        stats: Optional[BatchStats] = None,
    ) -> list[int]:
        """Index in ``S`` of the predecessor of every element of ``batch`` (-1 if none).

        :param batch: strictly increasing query values
        """
        if any(b <= a for a, b in zip(batch, batch[1:])):
            raise ContractError("batch must be strictly increasing")
        if counters is not None:
            counters.pred += len(batch)
        if not batch:
            return []
        if not self.values:
            return [-1] * len(batch)
        level = self.choose_level(len(batch))
        lst = self.level_lists[level]
        nodes = self.levels[level]
        out = []
        deep = 0
        j = -1  # last entry of lst with value <= current query
        for x in batch:
            while j + 1 < len(lst) and lst[j + 1][0] <= x:
                j += 1
            if j < 0:
                out.append(-1)
                continue
            value, kind, prefix = lst[j]
            node = nodes[prefix]
            if kind == 1:
                out.append(node.hi)
            else:
                deep += 1
                out.append(self._node_query(node, x, stats))
        if stats is not None:
            stats.batches += 1
            stats.levels.append(level)
            stats.batch_sizes.append(len(batch))
            stats.deep_queries.append(deep)
            stats.merge_lengths.append(len(lst) + len(batch))
        return out

    def query(
        self,
        batch: Sequence[int],
        counters: Optional[Counters] = None,
        stats: Optional[BatchStats] = None,
    ) -> list[Optional[int]]:
        """Predecessor values for a sorted batch; ``None`` where no element is <= the query."""
        return [self.values[i] if i >= 0 else None for i in self.query_indices(batch, counters, stats)]

    def pred_index(self, x: int, counters: Optional[Counters] = None) -> int:
        return self.query_indices([x], counters)[0]

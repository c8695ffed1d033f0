"""Lowest labeled ancestor queries through predecessor search on an Euler tour.

Every node ``w`` carrying character ``c`` in its label contributes an
opening event at ``tin[w]`` and a closing event at ``tout[w]``. For a node
``v`` the last event at or before ``tin[v]`` is either the opening of the
deepest labeled interval containing ``v``, or the closing of some ``w``
whose nearest labeled proper ancestor is then the answer.
"""
from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .counters import Counters
from .predecessor import BatchedPredecessor, BatchStats


class FirstLabelStructure:
    """``firstlabel(v, c)``: lowest ancestor-or-self of ``v`` labeled ``c``.

    :param tin: entry timestamps (all tin/tout values distinct)
    :param tout: exit timestamps
    :param labeled: for each character, the nodes whose label contains it
    """

    def __init__(self, tin: Sequence[int], tout: Sequence[int], labeled: Mapping[str, Sequence[int]]):
        self.tin = tin
        universe = 2 * len(tin) + 1
        self._events: dict[str, tuple[BatchedPredecessor, list[Optional[int]]]] = {}
        for char, nodes in labeled.items():
            ordered = sorted(nodes, key=tin.__getitem__)
            events: list[tuple[int, Optional[int]]] = []
            stack: list[int] = []
            enclosing: dict[int, Optional[int]] = {}
            for w in ordered:
                while stack and tout[stack[-1]] < tin[w]:
                    stack.pop()
                enclosing[w] = stack[-1] if stack else None
                stack.append(w)
            for w in ordered:
                events.append((tin[w], w))
                events.append((tout[w], enclosing[w]))
            events.sort()
            stamps = [t for t, _ in events]
            answers = [a for _, a in events]
            self._events[char] = (BatchedPredecessor(stamps, universe), answers)

    def firstlabel(self, v: int, char: str, counters: Optional[Counters] = None) -> Optional[int]:
        return self.firstlabel_batch([v], char, counters)[0]

    def firstlabel_batch(
        self,
        nodes: Sequence[int],
        char: str,
        counters: Optional[Counters] = None,
        stats: Optional[BatchStats] = None,
    ) -> list[Optional[int]]:
        """Answer several first-label queries for one character.

        Queries are sorted by tour position and deduplicated before being
        sent as a single predecessor batch; answers come back in input order.
        """
        if counters is not None:
            counters.firstlabel += len(set(nodes))
        entry = self._events.get(char)
        if entry is None:
            return [None] * len(nodes)
        structure, answers = entry
        keys = sorted({self.tin[v] for v in nodes})
        idx = structure.query_indices(keys, None, stats)
        found = {k: (answers[i] if i >= 0 else None) for k, i in zip(keys, idx)}
        return [found[self.tin[v]] for v in nodes]

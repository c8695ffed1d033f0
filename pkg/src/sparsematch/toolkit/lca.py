"""Lowest common ancestors via an Euler tour and range minimum queries."""
from __future__ import annotations

from typing import Optional, Sequence

from .counters import Counters
from .rmq import RmqStructure


class LcaStructure:
    """Constant-time LCA queries on a static rooted tree.

    :param children: child lists indexed by node id
    :param root: root node id
    """

    def __init__(self, children: Sequence[Sequence[int]], root: int):
        n = len(children)
        self.root = root
        self.first = [0] * n
        self.depth = [0] * n
        tour: list[int] = []
        tour_depth: list[int] = []
        # iterative DFS; each frame is (node, next child index)
        stack = [(root, 0)]
        self.first[root] = 0
        tour.append(root)
        tour_depth.append(0)
        while stack:
            node, i = stack[-1]
            kids = children[node]
            if i < len(kids):
                stack[-1] = (node, i + 1)
                child = kids[i]
                self.depth[child] = self.depth[node] + 1
                self.first[child] = len(tour)
                tour.append(child)
                tour_depth.append(self.depth[child])
                stack.append((child, 0))
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    tour.append(parent)
                    tour_depth.append(self.depth[parent])
        self.tour = tour
        self._rmq = RmqStructure(tour_depth)

    def lca(self, u: int, v: int, counters: Optional[Counters] = None) -> int:
        if counters is not None:
            counters.lca += 1
        a = self.first[u]
        b = self.first[v]
        if a > b:
            a, b = b, a
        return self.tour[self._rmq.query(a, b)]

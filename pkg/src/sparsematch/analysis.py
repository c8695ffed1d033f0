"""Set-theoretic tables over a parse tree.

Linear-size fields (nullable, extent tops, lowest star ancestors, labels)
are computed eagerly. The explicit ``first``/``last``/``follow`` sets can be
quadratic in size, so they are built on first access only; the matching
engine never touches them.
"""
from __future__ import annotations

from functools import cached_property
from typing import Optional

from .regex import Kind, ParseTree
from .toolkit.lca import LcaStructure


def _merge(a: list[int], b: list[int]) -> list[int]:
    return sorted(set(a).union(b))


class AnalysisTables:
    """Derived tables for one :class:`ParseTree`.

    - ``nullable[v]``: the empty string is in the language of ``v``
    - ``fe_top_node[v]`` / ``le_top_node[v]``: highest ancestor-or-self ``x``
      with ``first(v) <= first(x)`` (resp. ``last``)
    - ``fe_top[r]`` / ``le_top[r]``: the same for position rank ``r``; the
      first extent of ``r`` is the path from its leaf up to ``fe_top[r]``
    - ``parent_star[v]``: lowest proper star ancestor, or -1
    - ``node_labels[v]``: characters ``c`` such that ``v`` is the LCA of two
      ``c``-positions, closed upward along ``parent_star``; a literal leaf
      carries its own character
    - ``labeled[c]``: internal nodes whose label contains ``c``
    """

    def __init__(self, tree: ParseTree, lca: Optional[LcaStructure] = None):
        self.tree = tree
        t = tree
        n = len(t)
        self.depth = t.depth
        self.lca = lca if lca is not None else LcaStructure(t.children, t.root)
        post = t.nodes_postorder()
        pre = t.nodes_preorder()

        nullable = [False] * n
        for v in post:
            k = t.kind[v]
            if k == Kind.EPS or k == Kind.STAR:
                nullable[v] = True
            elif k == Kind.CAT:
                nullable[v] = nullable[t.left[v]] and nullable[t.right[v]]
            elif k == Kind.ALT:
                nullable[v] = nullable[t.left[v]] or nullable[t.right[v]]
        self.nullable = nullable

        has_pos = [t.lo[v] <= t.hi[v] for v in range(n)]
        fe = [t.root] * n
        le = [t.root] * n
        ps = [-1] * n
        for v in pre:
            p = t.parent[v]
            if p < 0:
                continue
            ps[v] = p if t.kind[p] == Kind.STAR else ps[p]
            if not has_pos[v]:
                continue  # empty first/last: every ancestor qualifies
            first_in = last_in = True
            if t.kind[p] == Kind.CAT:
                if v == t.right[p]:
                    first_in = nullable[t.left[p]]
                else:
                    last_in = nullable[t.right[p]]
            fe[v] = fe[p] if first_in else v
            le[v] = le[p] if last_in else v
        self.fe_top_node = fe
        self.le_top_node = le
        self.parent_star = ps
        self.fe_top = [0] + [fe[v] for v in t.positions]
        self.le_top = [0] + [le[v] for v in t.positions]

        labels: dict[int, set[str]] = {}
        for v in t.positions:
            labels[v] = {t.char[v]}
        labeled: dict[str, list[int]] = {}
        for c, ranks in t.pos_by_char.items():
            nodes: set[int] = set()
            for a, b in zip(ranks, ranks[1:]):
                nodes.add(self.lca.lca(t.positions[a - 1], t.positions[b - 1]))
            for w in list(nodes):
                w = ps[w]
                while w >= 0 and w not in nodes:
                    nodes.add(w)
                    w = ps[w]
            for w in nodes:
                labels.setdefault(w, set()).add(c)
            labeled[c] = sorted(nodes, key=t.tin.__getitem__)
        self.labeled = labeled
        self.node_labels: list[tuple[str, ...]] = [tuple(sorted(labels.get(v, ()))) for v in range(n)]

    def has_label(self, v: int, c: str) -> bool:
        return c in self.node_labels[v]

    def in_first_extent(self, rank: int, v: int) -> bool:
        """``v`` lies on the first extent of position ``rank``."""
        t = self.tree
        leaf = t.positions[rank - 1]
        top = self.fe_top[rank]
        return t.is_ancestor(v, leaf) and t.is_ancestor(top, v)

    def in_last_extent(self, rank: int, v: int) -> bool:
        t = self.tree
        leaf = t.positions[rank - 1]
        top = self.le_top[rank]
        return t.is_ancestor(v, leaf) and t.is_ancestor(top, v)

    # Explicit sets, computed with the classic recurrences. Quadratic space.

    @property
    def first(self) -> list[list[int]]:
        return self._first_last[0]

    @property
    def last(self) -> list[list[int]]:
        return self._first_last[1]

    @cached_property
    def _first_last(self) -> tuple[list[list[int]], list[list[int]]]:
        t = self.tree
        n = len(t)
        first: list[list[int]] = [[] for _ in range(n)]
        last: list[list[int]] = [[] for _ in range(n)]
        for v in t.nodes_postorder():
            k = t.kind[v]
            if k == Kind.LIT:
                first[v] = [t.rank[v]]
                last[v] = [t.rank[v]]
            elif k == Kind.STAR:
                first[v] = first[t.left[v]]
                last[v] = last[t.left[v]]
            elif k == Kind.ALT:
                first[v] = _merge(first[t.left[v]], first[t.right[v]])
                last[v] = _merge(last[t.left[v]], last[t.right[v]])
            elif k == Kind.CAT:
                a, b = t.left[v], t.right[v]
                first[v] = _merge(first[a], first[b]) if self.nullable[a] else first[a]
                last[v] = _merge(last[a], last[b]) if self.nullable[b] else last[b]
        return first, last

    @cached_property
    def follow(self) -> list[list[int]]:
        """``follow[r]``: positions that may follow rank ``r`` in the whole pattern."""
        return self.follow_within(self.tree.root)

    def follow_within(self, v: int) -> list[list[int]]:
        """Follow sets relative to the subexpression rooted at ``v``."""
        t = self.tree
        first, last = self.first, self.last
        sets: list[set[int]] = [set() for _ in range(t.m + 1)]
        stack = [v]
        while stack:
            w = stack.pop()
            k = t.kind[w]
            if k == Kind.CAT:
                for p in last[t.left[w]]:
                    sets[p].update(first[t.right[w]])
            elif k == Kind.STAR:
                for p in last[w]:
                    sets[p].update(first[w])
            stack.extend(t.children[w])
        return [sorted(s) for s in sets]


def analyze(tree: ParseTree) -> AnalysisTables:
    """Compute the :class:`AnalysisTables` of ``tree``."""
    return AnalysisTables(tree)

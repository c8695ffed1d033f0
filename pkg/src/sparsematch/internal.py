"""Output-sensitive internal transitions over the parse tree.

For each character ``c`` the index keeps the ``c``-positions in left-to-right
order together with the highest node of each position's first extent and
that node's depth. A range-minimum query over the depths finds, inside any
contiguous block of ``c``-positions, the one whose first extent reaches
highest; if that one does not reach the target node, none does. Recursing on
both sides of each hit enumerates the answer with at most ``2k + 1`` range
queries for ``k`` results.

Range indices are 0-based and inclusive.
"""
from __future__ import annotations

from typing import Optional

from .analysis import AnalysisTables
from .errors import ContractError
from .regex import Kind, ParseTree
from .toolkit.counters import Counters
from .toolkit.predecessor import BatchedPredecessor
from .toolkit.rmq import RmqStructure

Range = tuple[int, int]


class InternalIndex:
    def __init__(self, tree: ParseTree, tables: AnalysisTables):
        self.tree = tree
        self.tables = tables
        t = tree
        self.A: dict[str, list[int]] = {}
        self.F: dict[str, list[int]] = {}
        self.D: dict[str, list[int]] = {}
        self.rmq: dict[str, RmqStructure] = {}
        self.pred: dict[str, BatchedPredecessor] = {}
        for c, ranks in t.pos_by_char.items():
            self.A[c] = ranks
            self.F[c] = [tables.fe_top[r] for r in ranks]
            self.D[c] = [t.depth[f] for f in self.F[c]]
            self.rmq[c] = RmqStructure(self.D[c])
            self.pred[c] = BatchedPredecessor(ranks, t.m + 2)
        # ranges of c-positions below v (and below right(v) for concatenations),
        # stored only where c is in label(v)
        self.ranges: dict[tuple[int, str], Range] = {}
        self.right_ranges: dict[tuple[int, str], Optional[Range]] = {}
        for c, nodes in tables.labeled.items():
            for v in nodes:
                k = t.kind[v]
                if k != Kind.CAT and k != Kind.STAR:
                    continue
                self.ranges[v, c] = self._scan_range(c, t.lo[v], t.hi[v])
                if k == Kind.CAT:
                    w = t.right[v]
                    self.right_ranges[v, c] = self._scan_range(c, t.lo[w], t.hi[w])

    def _scan_range(self, c: str, lo: int, hi: int) -> Optional[Range]:
        pred = self.pred[c]
        l = pred.pred_index(lo - 1) + 1
        r = pred.pred_index(hi)
        return (l, r) if l <= r else None

    def space(self) -> int:
        return (
            3 * sum(len(a) for a in self.A.values())
            + 2 * len(self.ranges)
            + 2 * len(self.right_ranges)
        )

    def descendant_range(
        self, v: int, c: str, right: bool = False, counters: Optional[Counters] = None
    ) -> Optional[Range]:
        """Index range in ``A[c]`` of the ``c``-positions below ``v`` (or below ``right(v)``).

        Stored when ``c`` labels ``v``; otherwise two predecessor queries.
        """
        t = self.tree
        if c not in self.A:
            return None
        key = (v, c)
        if right:
            if key in self.right_ranges:
                return self.right_ranges[key]
            w = t.right[v]
            if w < 0:
                raise ContractError(f"node {v} has no right child")
        else:
            if key in self.ranges:
                return self.ranges[key]
            w = v
        if t.lo[w] > t.hi[w]:
            return None
        pred = self.pred[c]
        l = pred.pred_index(t.lo[w] - 1, counters) + 1
        r = pred.pred_index(t.hi[w], counters)
        return (l, r) if l <= r else None

    def reaches(self, c: str, j: int, target: int) -> bool:
        """The first extent of the ``j``-th ``c``-position contains ``target``."""
        return self.tree.is_ancestor(self.F[c][j], target)

    def report(
        self, c: str, rng: Optional[Range], target: int, counters: Optional[Counters] = None
    ) -> list[int]:
        """Ranks in ``A[c][l..r]`` whose first extent contains ``target``, in order.

        ``target`` must be an ancestor-or-self of every position in the range.
        """
        if rng is None:
            return []
        A = self.A[c]
        F = self.F[c]
        rmq = self.rmq[c]
        is_anc = self.tree.is_ancestor
        out: list[int] = []
        # in-order traversal of the split recursion; an int on the stack is a
        # hit waiting to be emitted once its left part is done
        stack: list = [rng]
        while stack:
            item = stack.pop()
            if isinstance(item, int):
                out.append(item)
                continue
            l, r = item
            if l > r:
                continue
            j = rmq.query(l, r, counters)
            if not is_anc(F[j], target):
                continue
            stack.append((j + 1, r))
            stack.append(A[j])
            stack.append((l, j - 1))
        return out

    def nonempty(self, c: str, rng: Optional[Range], target: int) -> bool:
        if rng is None:
            return False
        j = self.rmq[c].query(rng[0], rng[1])
        return self.reaches(c, j, target)

    def delta_concat(self, v: int, c: str, counters: Optional[Counters] = None) -> list[int]:
        """Positions labeled ``c`` whose first extent contains ``right(v)``."""
        if self.tree.kind[v] != Kind.CAT:
            raise ContractError(f"node {v} is not a concatenation")
        rng = self.descendant_range(v, c, right=True, counters=counters)
        return self.report(c, rng, self.tree.right[v], counters)

    def delta_star(self, v: int, c: str, counters: Optional[Counters] = None) -> list[int]:
        """Positions labeled ``c`` whose first extent contains the lowest star above ``v``."""
        target = self.tables.parent_star[v]
        if target < 0:
            return []
        rng = self.descendant_range(v, c, counters=counters)
        return self.report(c, rng, target, counters)

    def initial(self, c: str, counters: Optional[Counters] = None) -> list[int]:
        """``first(R)`` restricted to ``c``: the start state's transition."""
        A = self.A.get(c)
        if not A:
            return []
        return self.report(c, (0, len(A) - 1), self.tree.root, counters)


def build_internal_index(tree: ParseTree, tables: AnalysisTables) -> InternalIndex:
    return InternalIndex(tree, tables)

"""State-set transitions in time near-linear in input plus output size.

A transition from a sorted position set ``P`` on character ``c`` is the
union of internal transitions at a few concatenation and star nodes. Those
nodes all lie on the tree induced by ``P`` and its ancestors, so the engine
compacts that tree (leaves ``P`` plus LCAs of neighbours), walks each
segment once, and jumps between candidate nodes with precomputed pointers:

- ``next_cat[v, c]``: lowest proper ancestor ``u`` with ``v`` below
  ``left(u)``, ``c`` in ``label(u)`` and a non-empty concatenation transition
- ``next_star[v, c]``: lowest proper star ancestor with a non-empty star
  transition on ``c``
- ``endfirst[v]`` / ``endlast[v]``: highest proper star ancestor whose
  first (resp. last) set contains that of star ``v``

All predecessor and first-label lookups of one call are issued as sorted,
deduplicated batches.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .analysis import AnalysisTables
from .errors import ContractError
from .internal import InternalIndex, Range
from .regex import Kind, ParseTree
from .toolkit.counters import Counters
from .toolkit.firstlabel import FirstLabelStructure
from .toolkit.lca import LcaStructure
from .toolkit.predecessor import BatchStats

NONE = -1


def check_sorted(P: Sequence[int]) -> None:
    if any(b <= a for a, b in zip(P, P[1:])):
        raise ContractError("state set must be strictly increasing")


@dataclass
class TransitionTree:
    """Compact tree induced by a position set and its ancestors.

    Every compact node ``c`` (a leaf or a branching node) is the bottom of
    one segment reaching up to ``parent[c]`` (exclusive), or to the root of
    the pattern (inclusive) when ``parent[c] == -1``.
    """

    leaves: list[int]
    nodes: list[int]  # compact nodes in preorder
    parent: dict[int, int]
    # highest node of the last extent of P below c, when c itself is in it
    reach: dict[int, int]
    live: dict[int, bool] = field(default_factory=dict)
    # deepest live ancestor u with c below right(u)
    dom: dict[int, int] = field(default_factory=dict)
    weakly_dominated: dict[int, bool] = field(default_factory=dict)
    concat_dominated: dict[int, bool] = field(default_factory=dict)
    star_segment: dict[int, bool] = field(default_factory=dict)
    # lowest star in the last extent of P strictly above c
    lowest_star_above: dict[int, int] = field(default_factory=dict)

    @property
    def branching(self) -> list[int]:
        leaves = set(self.leaves)
        return [c for c in self.nodes if c not in leaves]

    @property
    def segments(self) -> list[tuple[int, int]]:
        return [(c, self.parent[c]) for c in self.nodes]


@dataclass
class Collected:
    tree: TransitionTree
    concat_nodes: list[tuple[int, Optional[Range]]]
    star_nodes: list[tuple[int, Optional[Range], int]]  # (node, range, target)


class Engine:
    """Linear-space representation of the position automaton."""

    def __init__(self, tree: ParseTree, tables: AnalysisTables, index: InternalIndex):
        self.tree = tree
        self.tables = tables
        self.index = index
        t = tree
        self.lca: LcaStructure = tables.lca
        self.firstlabel = FirstLabelStructure(t.tin, t.tout, tables.labeled)
        ps = tables.parent_star
        is_anc = t.is_ancestor

        self.nonempty_cat: set[tuple[int, str]] = set()
        self.nonempty_star: set[tuple[int, str]] = set()
        for c, nodes in tables.labeled.items():
            for v in nodes:
                if t.kind[v] == Kind.CAT and index.nonempty(c, index.right_ranges[v, c], t.right[v]):
                    self.nonempty_cat.add((v, c))
                elif t.kind[v] == Kind.STAR and index.nonempty(c, index.ranges[v, c], v):
                    self.nonempty_star.add((v, c))

        self.next_cat: dict[tuple[int, str], int] = {}
        self.next_star: dict[tuple[int, str], int] = {}
        for c, nodes in tables.labeled.items():
            stack: list[int] = []
            for v in nodes:  # preorder
                while stack and not is_anc(stack[-1], v):
                    stack.pop()
                y = stack[-1] if stack else NONE
                if y == NONE:
                    self.next_cat[v, c] = NONE
                elif (
                    t.kind[y] == Kind.CAT
                    and is_anc(t.left[y], v)
                    and (y, c) in self.nonempty_cat
                ):
                    self.next_cat[v, c] = y
                else:
                    self.next_cat[v, c] = self.next_cat[y, c]
                stack.append(v)
                s = ps[v]
                if s == NONE:
                    self.next_star[v, c] = NONE
                elif (s, c) in self.nonempty_star:
                    self.next_star[v, c] = s
                else:
                    self.next_star[v, c] = self.next_star[s, c]

        n = len(t)
        self.endfirst = [NONE] * n
        self.endlast = [NONE] * n
        for v in t.nodes_preorder():
            if t.kind[v] != Kind.STAR or t.lo[v] > t.hi[v]:
                continue
            s = ps[v]
            if s == NONE:
                continue
            if is_anc(tables.fe_top_node[v], s):
                self.endfirst[v] = self.endfirst[s] if self.endfirst[s] != NONE else s
            if is_anc(tables.le_top_node[v], s):
                self.endlast[v] = self.endlast[s] if self.endlast[s] != NONE else s

    def space(self) -> int:
        return (
            self.index.space()
            + len(self.nonempty_cat)
            + len(self.nonempty_star)
            + len(self.next_cat)
            + len(self.next_star)
            + 2 * len(self.tree)
        )

    # transition tree

    def build_transition_tree(self, P: Sequence[int], counters: Optional[Counters] = None) -> TransitionTree:
        if not P:
            raise ContractError("transition tree needs a non-empty state set")
        check_sorted(P)
        t = self.tree
        tab = self.tables
        is_anc = t.is_ancestor
        leaves = [t.positions[r - 1] for r in P]
        nodes = set(leaves)
        for a, b in zip(leaves, leaves[1:]):
            nodes.add(self.lca.lca(a, b, counters))
        order = sorted(nodes, key=t.tin.__getitem__)
        parent: dict[int, int] = {}
        children: dict[int, list[int]] = {c: [] for c in order}
        stack: list[int] = []
        for c in order:
            while stack and not is_anc(stack[-1], c):
                stack.pop()
            parent[c] = stack[-1] if stack else NONE
            if stack:
                children[stack[-1]].append(c)
            stack.append(c)

        reach: dict[int, int] = {}
        for c in reversed(order):
            kids = children[c]
            if not kids:
                reach[c] = tab.le_top_node[c]
            elif any(k in reach and is_anc(reach[k], c) for k in kids):
                reach[c] = tab.le_top_node[c]
        T = TransitionTree(leaves, order, parent, reach)

        for c in order:
            live = False
            if t.kind[c] == Kind.CAT and children[c]:
                left = t.left[c]
                for k in children[c]:
                    if is_anc(left, k):
                        live = k in reach and is_anc(reach[k], left)
                        break
            T.live[c] = live
        for c in order:
            p = parent[c]
            if p == NONE:
                T.dom[c] = NONE
                T.lowest_star_above[c] = NONE
            else:
                T.dom[c] = p if T.live[p] and is_anc(t.right[p], c) else T.dom[p]
            d = T.dom[c]
            T.weakly_dominated[c] = d != NONE and t.depth[t.right[d]] >= t.depth[tab.fe_top_node[c]]
            T.concat_dominated[c] = (
                t.kind[c] == Kind.CAT
                and d != NONE
                and t.depth[t.right[d]] >= t.depth[tab.fe_top_node[t.right[c]]]
            )
            s = tab.parent_star[c]
            T.star_segment[c] = (
                s != NONE
                and (p == NONE or is_anc(p, s))
                and c in reach
                and is_anc(reach[c], s)
            )
            if T.star_segment[c]:
                T.lowest_star_above[c] = s
            elif p != NONE:
                T.lowest_star_above[c] = T.lowest_star_above[p]
        return T

    # node collection

    def collect(
        self,
        P: Sequence[int],
        c: str,
        counters: Optional[Counters] = None,
        stats: Optional[BatchStats] = None,
    ) -> Collected:
        """Find the concatenation and star nodes whose internal transitions make up the answer."""
        t = self.tree
        tab = self.tables
        idx = self.index
        is_anc = t.is_ancestor
        depth = t.depth
        lca = self.lca.lca
        T = self.build_transition_tree(P, counters)
        A = idx.A.get(c)
        if not A:
            return Collected(T, [], [])
        pred = idx.pred[c]

        active = [b for b in T.nodes if b in T.reach]
        # first batch: neighbours of each segment bottom's rank interval
        keys = sorted({t.lo[b] - 1 for b in active})
        found = dict(zip(keys, pred.query_indices(keys, counters, stats)))
        below: dict[int, int] = {}
        contains: dict[int, bool] = {}
        for b in active:
            i = found[t.lo[b] - 1]
            below[b] = i
            contains[b] = i + 1 < len(A) and A[i + 1] <= t.hi[b]

        # concatenation seeds
        cat_seed: dict[int, tuple[int, int]] = {}
        need_after = [b for b in active if contains[b]]
        keys = sorted({t.hi[b] for b in need_after})
        after = dict(zip(keys, pred.query_indices(keys, counters, stats)))
        range_end_keys: dict[int, int] = {}
        for b in active:
            top = T.parent[b]
            j = after[t.hi[b]] + 1 if contains[b] else below[b] + 1
            if j >= len(A):
                continue
            v = lca(b, t.positions[A[j] - 1], counters)
            if top != NONE and not is_anc(top, v):
                continue
            if not is_anc(T.reach[b], t.left[v]):
                continue
            cat_seed[b] = (v, j)
            if t.kind[v] == Kind.CAT and (v, c) not in idx.right_ranges:
                range_end_keys[b] = t.hi[v]
        keys = sorted(set(range_end_keys.values()))
        ends = dict(zip(keys, pred.query_indices(keys, counters, stats)))

        # star seeds
        star_seed: dict[int, tuple[int, int, int]] = {}  # b -> (v, w, j of the lone c-position)
        for b in active:
            if not T.star_segment[b]:
                continue
            top = T.parent[b]
            i = below[b]
            if contains[b]:
                v, j = b, i + 1
            else:
                cands = []
                if i >= 0:
                    cands.append((lca(b, t.positions[A[i] - 1], counters), i))
                if i + 1 < len(A):
                    cands.append((lca(b, t.positions[A[i + 1] - 1], counters), i + 1))
                if not cands:
                    continue
                v, j = max(cands, key=lambda vj: depth[vj[0]])
            w = tab.parent_star[v]
            if w == NONE or (top != NONE and not is_anc(top, w)) or not is_anc(T.reach[b], w):
                continue
            star_seed[b] = (v, w, j)

        queries = [v for v, _ in cat_seed.values()]
        queries += [v if t.kind[v] != Kind.LIT else t.parent[v] for v, _, _ in star_seed.values()]
        answers = self.firstlabel.firstlabel_batch(queries, c, counters, stats) if queries else []
        fl = {}
        for q, a in zip(queries, answers):
            fl[q] = NONE if a is None else a

        steps = 0
        cat_nodes: list[tuple[int, Optional[Range]]] = []
        for b, (v, j) in cat_seed.items():
            top = T.parent[b]
            reach = T.reach[b]
            below_dom = T.dom[b]
            top_dom = T.dom[top] if top != NONE else NONE

            def dominated(x: int) -> bool:
                d = top_dom if x == top else below_dom
                return d != NONE and depth[t.right[d]] >= depth[tab.fe_top_node[t.right[x]]]

            if t.kind[v] == Kind.CAT and not dominated(v):
                if b in range_end_keys:
                    r = ends[range_end_keys[b]]
                    cat_nodes.append((v, (j, r) if j <= r else None))
                else:
                    cat_nodes.append((v, idx.right_ranges[v, c]))
            x = fl[v]
            if x == v:
                x = self.next_cat[v, c]
                steps += 1
            elif x != NONE and not (
                t.kind[x] == Kind.CAT and is_anc(t.left[x], v) and (x, c) in self.nonempty_cat
            ):
                x = self.next_cat[x, c]
                steps += 1
            while x != NONE and (top == NONE or is_anc(top, x)) and is_anc(reach, t.left[x]):
                if not dominated(x):
                    cat_nodes.append((x, idx.right_ranges[x, c]))
                x = self.next_cat[x, c]
                steps += 1

        star_nodes: list[tuple[int, Optional[Range], int]] = []
        for b, (v, w, j) in star_seed.items():
            top = T.parent[b]
            reach = T.reach[b]
            if (w, c) not in idx.ranges:
                # unlabeled: exactly one c-position lies below w
                star_nodes.append((w, (j, j), w))
            x = fl[v if t.kind[v] != Kind.LIT else t.parent[v]]
            if x == NONE:
                continue
            y = x if t.kind[x] == Kind.STAR else tab.parent_star[x]
            if y != NONE and (y, c) not in self.nonempty_star:
                y = self.next_star[y, c]
                steps += 1

            def on_segment(z: int) -> bool:
                return top == NONE or is_anc(top, z)

            while y != NONE and on_segment(y) and is_anc(reach, y):
                e = self.endfirst[y]
                if e == NONE:
                    star_nodes.append((y, idx.ranges[y, c], y))
                    y = self.next_star[y, c]
                    steps += 1
                    continue
                if on_segment(e) and is_anc(reach, e):
                    y = e
                    steps += 1
                    continue
                last = self.endlast[y]
                steps += 1
                if last != NONE:
                    y = e if depth[e] >= depth[last] else last
                    continue
                z = T.lowest_star_above[top] if top != NONE else NONE
                if z == NONE or depth[z] < depth[e]:
                    star_nodes.append((y, idx.ranges[y, c], y))
                break
        if counters is not None:
            counters.pointer_steps += steps
        return Collected(T, cat_nodes, self._undominated(star_nodes))

    def _undominated(self, found: list[tuple[int, Optional[Range], int]]) -> list[tuple[int, Optional[Range], int]]:
        """Drop stars whose first set is contained in that of another collected star.

        Different segments can reach the same first-set chain from below and
        from above; keeping only the top of each chain makes outputs disjoint.
        """
        if len(found) < 2:
            return found
        t = self.tree
        fe = self.tables.fe_top_node
        found = sorted(set(found), key=lambda item: t.tin[item[0]])
        kept = []
        stack: list[int] = []
        for item in found:
            v = item[0]
            while stack and not t.is_ancestor(stack[-1], v):
                stack.pop()
            if not (stack and t.is_ancestor(fe[v], stack[-1])):
                kept.append(item)
            stack.append(v)
        return kept

    def collect_concat_nodes(self, P: Sequence[int], c: str, counters: Optional[Counters] = None) -> list[int]:
        return [v for v, _ in self.collect(P, c, counters).concat_nodes]

    def collect_star_nodes(self, P: Sequence[int], c: str, counters: Optional[Counters] = None) -> list[int]:
        return [v for v, _, _ in self.collect(P, c, counters).star_nodes]

    def state_set_transition(
        self,
        P: Sequence[int],
        c: str,
        counters: Optional[Counters] = None,
        stats: Optional[BatchStats] = None,
    ) -> list[int]:
        """All positions reachable from ``P`` by one ``c``-transition, sorted."""
        check_sorted(P)
        if not P or c not in self.index.A:
            return []
        found = self.collect(P, c, counters, stats)
        idx = self.index
        t = self.tree
        parts: list[list[int]] = []
        for v, rng in found.concat_nodes:
            parts.append(idx.report(c, rng, t.right[v], counters))
        for v, rng, target in found.star_nodes:
            parts.append(idx.report(c, rng, target, counters))
        parts = [p for p in parts if p]
        if len(parts) == 1:
            return parts[0]
        return sorted(set().union(*parts))

    def initial(self, c: str, counters: Optional[Counters] = None) -> list[int]:
        return self.index.initial(c, counters)


def build_engine(tree: ParseTree, tables: AnalysisTables, index: Optional[InternalIndex] = None) -> Engine:
    return Engine(tree, tables, index if index is not None else InternalIndex(tree, tables))


def compile_pattern(pattern: str) -> Engine:
    from .analysis import analyze
    from .regex import parse

    tree = parse(pattern)
    return build_engine(tree, analyze(tree))

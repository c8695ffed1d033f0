"""Explicit position automaton and brute-force language expansion.

This is the ground truth the sparse engine is checked against. It stores
every transition (quadratic space) and builds them from the classic
first/follow recurrences, so it shares nothing with the extent-based
machinery used by the engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .analysis import AnalysisTables
from .regex import Kind, ParseTree

START = 0  # state id of the start state p0; positions are 1..m


@dataclass(frozen=True)
class OracleAutomaton:
    m: int
    transitions: tuple[tuple[int, int, str], ...]
    delta: dict[tuple[int, str], tuple[int, ...]]
    accepting: frozenset[int]

    @property
    def states(self) -> range:
        return range(self.m + 1)


def build_oracle(tree: ParseTree, tables: AnalysisTables) -> OracleAutomaton:
    edges: list[tuple[int, int, str]] = []
    for q in tables.first[tree.root]:
        edges.append((START, q, tree.label(q)))
    for p in range(1, tree.m + 1):
        for q in tables.follow[p]:
            edges.append((p, q, tree.label(q)))
    grouped: dict[tuple[int, str], list[int]] = {}
    for p, q, c in edges:
        grouped.setdefault((p, c), []).append(q)
    accepting = set(tables.last[tree.root])
    if tables.nullable[tree.root]:
        accepting.add(START)
    return OracleAutomaton(
        tree.m,
        tuple(edges),
        {k: tuple(sorted(set(v))) for k, v in grouped.items()},
        frozenset(accepting),
    )


def oracle_delta(auto: OracleAutomaton, states: Sequence[int], char: str) -> list[int]:
    out: set[int] = set()
    for p in states:
        out.update(auto.delta.get((p, char), ()))
    return sorted(out)


def oracle_match(auto: OracleAutomaton, text: str) -> tuple[bool, list[list[int]], int]:
    """Simulate on ``text``; returns (accepted, state sets S_0..S_n, density)."""
    current = [START]
    sets = [current]
    for c in text:
        current = oracle_delta(auto, current, c)
        sets.append(current)
    accepted = any(s in auto.accepting for s in current)
    return accepted, sets, sum(len(s) for s in sets)


def expand_language(tree: ParseTree, max_len: int) -> set[str]:
    """All strings of length <= ``max_len`` in the language of ``tree``."""
    langs: dict[int, set[str]] = {}
    for v in tree.nodes_postorder():
        k = tree.kind[v]
        if k == Kind.EPS:
            langs[v] = {""}
        elif k == Kind.LIT:
            langs[v] = {tree.char[v]}
        elif k == Kind.ALT:
            langs[v] = langs[tree.left[v]] | langs[tree.right[v]]
        elif k == Kind.CAT:
            langs[v] = {
                x + y
                for x in langs[tree.left[v]]
                for y in langs[tree.right[v]]
                if len(x) + len(y) <= max_len
            }
        else:
            base = langs[tree.left[v]] - {""}
            acc = {""}
            frontier = {""}
            while frontier:
                frontier = {x + y for x in frontier for y in base if len(x) + len(y) <= max_len} - acc
                acc |= frontier
            langs[v] = acc
    return langs[tree.root]


def expand_position_sequences(tree: ParseTree, max_len: int) -> set[tuple[int, ...]]:
    """Position sequences (ranks) of length <= ``max_len`` matched by ``tree``."""
    seqs: dict[int, set[tuple[int, ...]]] = {}
    for v in tree.nodes_postorder():
        k = tree.kind[v]
        if k == Kind.EPS:
            seqs[v] = {()}
        elif k == Kind.LIT:
            seqs[v] = {(tree.rank[v],)}
        elif k == Kind.ALT:
            seqs[v] = seqs[tree.left[v]] | seqs[tree.right[v]]
        elif k == Kind.CAT:
            seqs[v] = {
                x + y
                for x, y in product(seqs[tree.left[v]], seqs[tree.right[v]])
                if len(x) + len(y) <= max_len
            }
        else:
            base = seqs[tree.left[v]] - {()}
            acc = {()}
            frontier = {()}
            while frontier:
                frontier = {x + y for x in frontier for y in base if len(x) + len(y) <= max_len} - acc
                acc |= frontier
            seqs[v] = acc
    return seqs[tree.root]

"""Pattern parsing and the binary parse tree.

Grammar::

    alt  = cat ('|' cat)*
    cat  = rep*
    rep  = atom '*'*
    atom = literal | '(' alt ')'

Metacharacters ``( ) | * \\`` are escaped with a backslash. An empty
alternative or group denotes the empty string. Concatenation and union
associate to the left.

Positions (literal leaves) are numbered 1..m left to right; node ids are
indices into the parallel arrays of :class:`ParseTree`.
"""
from __future__ import annotations

from enum import IntEnum
from typing import Optional

from .errors import RegexSyntaxError

METACHARS = frozenset("()|*\\")


class Kind(IntEnum):
    EPS = 0
    LIT = 1
    CAT = 2
    ALT = 3
    STAR = 4


class ParseTree:
    """Binary syntax tree of a pattern plus the purely structural indexes.

    Attributes (all lists indexed by node id unless noted):

    - ``kind``, ``left``, ``right`` (-1 when absent), ``char`` (literals only)
    - ``parent`` (-1 at the root), ``depth``
    - ``tin``/``tout``: distinct Euler timestamps; ``u`` is an ancestor-or-self
      of ``v`` iff ``tin[u] <= tin[v]`` and ``tout[v] <= tout[u]``
    - ``lo``/``hi``: rank interval of the positions below the node
      (``lo > hi`` when there are none)
    - ``rank``: position rank of a literal, 0 otherwise
    - ``positions``: node id of each position, ``positions[r - 1]`` for rank r
    - ``pos_by_char``: sorted ranks per character
    """

    def __init__(self, kind, left, right, char, root: int, pattern: str = ""):
        self.kind: list[Kind] = kind
        self.left: list[int] = left
        self.right: list[int] = right
        self.char: list[Optional[str]] = char
        self.root = root
        self.pattern = pattern
        n = len(kind)
        self.parent = [-1] * n
        self.depth = [0] * n
        self.tin = [0] * n
        self.tout = [0] * n
        self.lo = [0] * n
        self.hi = [-1] * n
        self.rank = [0] * n
        self.positions: list[int] = []
        self.children: list[tuple[int, ...]] = [
            tuple(c for c in (left[v], right[v]) if c >= 0) for v in range(n)
        ]
        clock = 0
        stack = [(root, 0)]
        self.tin[root] = clock
        while stack:
            v, i = stack[-1]
            kids = self.children[v]
            if i == 0:
                self.lo[v] = len(self.positions) + 1
                if kind[v] == Kind.LIT:
                    self.positions.append(v)
                    self.rank[v] = len(self.positions)
            if i < len(kids):
                stack[-1] = (v, i + 1)
                c = kids[i]
                self.parent[c] = v
                self.depth[c] = self.depth[v] + 1
                clock += 1
                self.tin[c] = clock
                stack.append((c, 0))
            else:
                stack.pop()
                clock += 1
                self.tout[v] = clock
                self.hi[v] = len(self.positions)
        self.pos_by_char: dict[str, list[int]] = {}
        for r, v in enumerate(self.positions, 1):
            self.pos_by_char.setdefault(char[v], []).append(r)

    @property
    def m(self) -> int:
        return len(self.positions)

    def __len__(self) -> int:
        return len(self.kind)

    def label(self, rank: int) -> str:
        return self.char[self.positions[rank - 1]]

    def is_ancestor(self, u: int, v: int) -> bool:
        """True if ``u`` is an ancestor-or-self of ``v``."""
        return self.tin[u] <= self.tin[v] and self.tout[v] <= self.tout[u]

    def ancestors(self, v: int):
        """``v`` and its ancestors, bottom-up."""
        while v >= 0:
            yield v
            v = self.parent[v]

    def nodes_postorder(self) -> list[int]:
        return sorted(range(len(self.kind)), key=self.tout.__getitem__)

    def nodes_preorder(self) -> list[int]:
        return sorted(range(len(self.kind)), key=self.tin.__getitem__)

    def to_pattern(self, v: Optional[int] = None) -> str:
        """Fully parenthesized pattern text for the subtree at ``v``."""
        v = self.root if v is None else v
        k = self.kind[v]
        if k == Kind.EPS:
            return "()"
        if k == Kind.LIT:
            c = self.char[v]
            return "\\" + c if c in METACHARS else c
        if k == Kind.STAR:
            return "(" + self.to_pattern(self.left[v]) + ")*"
        op = "|" if k == Kind.ALT else ""
        return "(" + self.to_pattern(self.left[v]) + op + self.to_pattern(self.right[v]) + ")"

    def __repr__(self) -> str:
        return f"ParseTree({self.to_pattern()!r}, m={self.m})"


class _Builder:
    def __init__(self):
        self.kind: list[Kind] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.char: list[Optional[str]] = []

    def node(self, kind: Kind, left: int = -1, right: int = -1, char: Optional[str] = None) -> int:
        self.kind.append(kind)
        self.left.append(left)
        self.right.append(right)
        self.char.append(char)
        return len(self.kind) - 1


class _Parser:
    def __init__(self, pattern: str):
        self.text = pattern
        self.i = 0
        self.b = _Builder()

    def error(self, message: str, at: Optional[int] = None) -> RegexSyntaxError:
        at = self.i if at is None else at
        return RegexSyntaxError(message, len(self.text[:at].encode("utf-8")))

    def peek(self) -> Optional[str]:
        return self.text[self.i] if self.i < len(self.text) else None

    def alt(self) -> int:
        node = self.cat()
        while self.peek() == "|":
            self.i += 1
            node = self.b.node(Kind.ALT, node, self.cat())
        return node

    def cat(self) -> int:
        node = -1
        while True:
            c = self.peek()
            if c is None or c in "|)":
                break
            rep = self.rep()
            node = rep if node < 0 else self.b.node(Kind.CAT, node, rep)
        return node if node >= 0 else self.b.node(Kind.EPS)

    def rep(self) -> int:
        if self.peek() == "*":
            raise self.error("star with no operand")
        node = self.atom()
        while self.peek() == "*":
            self.i += 1
            node = self.b.node(Kind.STAR, node)
        return node

    def atom(self) -> int:
        c = self.text[self.i]
        if c == "(":
            self.i += 1
            node = self.alt()
            if self.peek() != ")":
                raise self.error("unbalanced parenthesis")
            self.i += 1
            return node
        if c == "\\":
            if self.i + 1 >= len(self.text):
                raise self.error("dangling escape")
            c = self.text[self.i + 1]
            self.i += 2
            return self.b.node(Kind.LIT, char=c)
        self.i += 1
        return self.b.node(Kind.LIT, char=c)


def parse(pattern: str) -> ParseTree:
    """Parse ``pattern`` into a :class:`ParseTree`.

    :raises RegexSyntaxError: on unbalanced parentheses, a dangling escape,
        or a star with no operand
    """
    p = _Parser(pattern)
    root = p.alt()
    if p.i < len(pattern):
        raise p.error("unbalanced parenthesis")
    b = p.b
    return ParseTree(b.kind, b.left, b.right, b.char, root, pattern)

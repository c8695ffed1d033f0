"""Whole-string matching by state-set simulation.

The start state ``p0`` (rank 0) is only ever in ``S_0``; ``S_1`` comes from
the per-character first set and every later set from
:meth:`Engine.state_set_transition`. Only the current set is kept alive.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .analysis import analyze
from .engine import Engine, build_engine
from .oracle import START
from .regex import parse
from .toolkit.counters import Counters

REPORTED_COUNTERS = ("pred", "firstlabel", "rmq", "pointer_steps")


@dataclass
class MatchReport:
    pattern: str
    accepted: bool
    n: int
    m: int
    density: int
    step_sizes: Optional[list[int]] = None
    counters: Counters = field(default_factory=Counters)
    micros: int = 0

    def to_dict(self, include_counters: bool = True) -> dict:
        out = {
            "pattern": self.pattern,
            "m": self.m,
            "n": self.n,
            "accepted": self.accepted,
            "delta": self.density,
            "step_sizes": list(self.step_sizes or []),
        }
        if include_counters:
            c = self.counters.as_dict()
            out["counters"] = {k: c[k] for k in REPORTED_COUNTERS}
        out["micros"] = self.micros
        return out


class Matcher:
    """A compiled pattern. Reusable across texts and safe to share."""

    def __init__(self, pattern: str):
        self.pattern = pattern
        self.tree = parse(pattern)
        self.tables = analyze(self.tree)
        self.engine: Engine = build_engine(self.tree, self.tables)

    @property
    def m(self) -> int:
        return self.tree.m

    def state_sets(self, text: str, counters: Optional[Counters] = None) -> Iterator[list[int]]:
        """Yield ``S_0, S_1, ..., S_n``; ``S_0`` is ``[0]`` (the start state)."""
        current = [START]
        yield current
        for i, c in enumerate(text):
            if not current:
                # nothing can come back once the set is empty
                for _ in range(len(text) - i):
                    yield []
                return
            if i == 0:
                current = self.engine.initial(c, counters)
            else:
                current = self.engine.state_set_transition(current, c, counters)
            yield current

    def accepts_set(self, states: list[int], n: int) -> bool:
        if n == 0:
            return self.tables.nullable[self.tree.root]
        le_top = self.tables.le_top
        root = self.tree.root
        return any(le_top[p] == root for p in states)

    def run(
        self,
        text: str,
        profile: bool = False,
        observer: Optional[Callable[[int, list[int]], None]] = None,
    ) -> MatchReport:
        """Simulate on ``text``.

        :param profile: record ``|S_i|`` for every step in the report
        :param observer: called as ``observer(i, S_i)`` after each step
        """
        counters = Counters()
        sizes: Optional[list[int]] = [] if profile else None
        density = 0
        last: list[int] = []
        start = time.perf_counter()
        for i, s in enumerate(self.state_sets(text, counters)):
            if observer is not None:
                observer(i, s)
            density += len(s)
            if sizes is not None:
                sizes.append(len(s))
            last = s
        accepted = self.accepts_set(last, len(text))
        micros = int((time.perf_counter() - start) * 1e6)
        return MatchReport(self.pattern, accepted, len(text), self.m, density, sizes, counters, micros)


def match(pattern: str, text: str) -> MatchReport:
    """Decide whether all of ``text`` is in the language of ``pattern``.

    :param pattern: regex in the package grammar
    :param text: the full input; matching is whole-string
    :raises RegexSyntaxError: if ``pattern`` does not parse
    """
    return Matcher(pattern).run(text)


def density_profile(pattern: str, text: str) -> MatchReport:
    """Like :func:`match` but also records ``|S_i|`` for every step."""
    return Matcher(pattern).run(text, profile=True)

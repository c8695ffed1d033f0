"""Caller-owned instrumentation counters."""
from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass
class Counters:
    """Query tallies accumulated by one call context.

    Structures never own counters; callers pass one in (or ``None``) so
    queries stay read-only and safe to share.
    """

    pred: int = 0
    firstlabel: int = 0
    rmq: int = 0
    pointer_steps: int = 0
    lca: int = 0

    def add(self, other: "Counters") -> None:
        self.pred += other.pred
        self.firstlabel += other.firstlabel
        self.rmq += other.rmq
        self.pointer_steps += other.pointer_steps
        self.lca += other.lca

    def total(self) -> int:
        return self.pred + self.firstlabel + self.rmq + self.pointer_steps + self.lca

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

"""Delimited output and figures for match reports."""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

from .matcher import REPORTED_COUNTERS, MatchReport

BASE_COLUMNS = ("pattern", "m", "n", "accepted", "delta", "step_sizes")
COUNTER_COLUMNS = tuple(f"counters.{k}" for k in REPORTED_COUNTERS)


def tsv_columns(counters: bool = True) -> tuple[str, ...]:
    return BASE_COLUMNS + (COUNTER_COLUMNS if counters else ()) + ("micros",)


def to_json(report: MatchReport, counters: bool = True) -> str:
    return json.dumps(report.to_dict(counters), ensure_ascii=False)


def tsv_row(report: MatchReport, counters: bool = True) -> list[str]:
    d = report.to_dict(True)
    row = [
        d["pattern"],
        str(d["m"]),
        str(d["n"]),
        "true" if d["accepted"] else "false",
        str(d["delta"]),
        ",".join(map(str, d["step_sizes"])),
    ]
    if counters:
        row += [str(d["counters"][k]) for k in REPORTED_COUNTERS]
    row.append(str(d["micros"]))
    return row


def to_tsv(reports: Iterable[MatchReport], header: bool = True, counters: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    if header:
        w.writerow(tsv_columns(counters))
    for r in reports:
        w.writerow(tsv_row(r, counters))
    return buf.getvalue()


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def density_figure(report: MatchReport, path: str) -> None:
    """Step plot of ``|S_i|`` against ``i``, with ``m`` as a reference line."""
    plt = _pyplot()
    sizes = report.step_sizes or []
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.step(range(len(sizes)), sizes, where="mid", color="C0", label="|S_i|")
    ax.axhline(report.m, color="0.6", lw=0.8, ls="--", label=f"m = {report.m}")
    ax.set_xlabel("step i")
    ax.set_ylabel("active states")
    ax.set_ylim(bottom=0)
    ax.set_title(f"delta = {report.density}, n = {report.n}, accepted = {report.accepted}", fontsize=9)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def bench_figure(reports: Sequence[MatchReport], path: str) -> None:
    """Counted work against density, one point per instance."""
    plt = _pyplot()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    deltas = [r.density for r in reports]
    work = [r.counters.total() for r in reports]
    ax1.scatter(deltas, work, s=12)
    ax1.set_xlabel("density (delta)")
    ax1.set_ylabel("counted queries")
    ax1.set_xscale("symlog")
    ax1.set_yscale("symlog")
    ax2.scatter(deltas, [r.micros for r in reports], s=12, color="C1")
    ax2.set_xlabel("density (delta)")
    ax2.set_ylabel("microseconds")
    ax2.set_xscale("symlog")
    ax2.set_yscale("symlog")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

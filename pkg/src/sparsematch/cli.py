"""Command-line front end.

Exit codes: 0 accept / agree / success, 1 reject / disagree, 2 usage or
syntax error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .errors import RegexSyntaxError
from .matcher import Matcher, MatchReport
from .oracle import build_oracle, oracle_delta
from . import report as rpt

PROG = "sparsematch"


class UsageError(Exception):
    pass


def read_text(source: str, keep_newline: bool = False) -> str:
    """Read a whole input (``-`` is stdin) and decode it as UTF-8.

    Undecodable bytes become lone surrogates, which match no pattern
    character. One trailing newline is dropped unless ``keep_newline``.
    """
    try:
        if source == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(source, "rb") as fh:
                data = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {source}: {e.strerror}") from e
    text = data.decode("utf-8", errors="surrogateescape")
    if not keep_newline:
        if text.endswith("\r\n"):
            text = text[:-2]
        elif text.endswith("\n"):
            text = text[:-1]
    return text


def read_lines(path: str) -> list[str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    return raw.decode("utf-8", errors="surrogateescape").splitlines()


def compile_checked(pattern: str, max_m: Optional[int]) -> Matcher:
    mt = Matcher(pattern)
    if max_m is not None and mt.m > max_m:
        raise UsageError(f"pattern has {mt.m} positions, over --max-m {max_m}")
    return mt


def check_n(text: str, max_n: Optional[int]) -> None:
    if max_n is not None and len(text) > max_n:
        raise UsageError(f"input has {len(text)} characters, over --max-n {max_n}")


def cmd_match(args) -> int:
    mt = compile_checked(args.pattern, args.max_m)
    text = read_text(args.input, args.keep_newline)
    check_n(text, args.max_n)
    rep = mt.run(text)
    if args.counters:
        print(rpt.to_json(rep, True))
    return 0 if rep.accepted else 1


def cmd_density(args) -> int:
    mt = compile_checked(args.pattern, args.max_m)
    text = read_text(args.input, args.keep_newline)
    check_n(text, args.max_n)
    rep = mt.run(text, profile=True)
    if args.tsv:
        sys.stdout.write(rpt.to_tsv([rep], counters=args.counters))
    else:
        print(rpt.to_json(rep, args.counters))
    if args.figure:
        rpt.density_figure(rep, args.figure)
    return 0


def cmd_bench(args) -> int:
    patterns = [p for p in read_lines(args.pattern_file) if p]
    texts = read_lines(args.corpus_file)
    reports: list[MatchReport] = []
    for p in patterns:
        mt = compile_checked(p, args.max_m)
        for text in texts:
            check_n(text, args.max_n)
            reports.append(mt.run(text, profile=True))
    if args.json:
        for r in reports:
            print(rpt.to_json(r, True))
    else:
        sys.stdout.write(rpt.to_tsv(reports, counters=True))
    if args.figure:
        rpt.bench_figure(reports, args.figure)
    return 0


def cmd_oracle_check(args) -> int:
    mt = compile_checked(args.pattern, args.max_m)
    text = read_text(args.input, args.keep_newline)
    check_n(text, args.max_n)
    auto = build_oracle(mt.tree, mt.tables)
    mismatches: list[str] = []
    expected = [0]

    def compare(i: int, got: list[int]) -> None:
        nonlocal expected
        if i > 0:
            expected = oracle_delta(auto, expected, text[i - 1])
        if got != expected and not mismatches:
            mismatches.append(f"S_{i} differs: engine {got} oracle {expected}")

    accepted = mt.run(text, observer=compare).accepted
    oracle_accepted = any(s in auto.accepting for s in expected)
    if not mismatches and accepted != oracle_accepted:
        mismatches.append(f"acceptance differs: engine {accepted} oracle {oracle_accepted}")
    if mismatches:
        print(mismatches[0], file=sys.stderr)
        return 1
    print(f"agree on {len(text) + 1} state sets, accepted={accepted}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-m", type=int, default=None, help="reject patterns with more positions")
    common.add_argument("--max-n", type=int, default=None, help="reject inputs with more characters")
    common.add_argument("--counters", action="store_true", help="include query counters in the output")

    text_in = argparse.ArgumentParser(add_help=False)
    text_in.add_argument("pattern")
    text_in.add_argument("input", nargs="?", default="-", help="input file, or - for stdin (default)")
    text_in.add_argument("--keep-newline", action="store_true", help="do not strip one trailing newline")

    ap = argparse.ArgumentParser(prog=PROG, description="Whole-string regex matching by sparse state-set simulation.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", parents=[common, text_in], help="exit 0 if the input matches, 1 if not")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("density", parents=[common, text_in], help="report per-step state-set sizes")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--tsv", action="store_true", help="tab-separated output with a header")
    p.add_argument("--figure", metavar="PATH", help="also write a step plot to PATH")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("bench", parents=[common], help="run every pattern against every corpus line")
    p.add_argument("pattern_file", help="one pattern per line")
    p.add_argument("corpus_file", help="one input per line")
    p.add_argument("--json", action="store_true", help="JSON lines instead of TSV")
    p.add_argument("--figure", metavar="PATH", help="also write work-vs-density plots to PATH")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle-check", parents=[common, text_in], help="compare against the explicit automaton")
    p.set_defaults(func=cmd_oracle_check)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except RegexSyntaxError as e:
        print(f"{PROG}: syntax error: {e}", file=sys.stderr)
        return 2
    except UsageError as e:
        print(f"{PROG}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

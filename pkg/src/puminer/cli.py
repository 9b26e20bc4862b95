"""Command-line front end: mine, compare strategy configurations, and
verify against the exhaustive oracle.

Exit codes: 0 success, 1 data/parse error, 2 usage error, 3 correctness
mismatch between configurations or against the oracle.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
import tracemalloc
from fractions import Fraction

from .dataset import ParseError, load_database
from .measures import ABSENT, PeriodConstraints
from .miner import MiningResult, Pattern, StrategyConfig, mine_topk
from .oracle import DEFAULT_ITEM_CAP, brute_topk, enumerate_phuis, sort_patterns

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _rational(text: str) -> Fraction:
    # accepts "5/2" and "2.5" (decimals become exact power-of-ten fractions)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="transaction database file")
    p.add_argument("--min-per", type=_positive_int, required=True)
    p.add_argument("--max-per", type=_positive_int, required=True)
    p.add_argument("--min-avg", type=_rational, required=True)
    p.add_argument("--max-avg", type=_rational, required=True)


def _constraints(args) -> PeriodConstraints:
    return PeriodConstraints(args.min_per, args.max_per, args.min_avg, args.max_avg)


def format_pattern(p: Pattern) -> str:
    min_per = "-" if p.min_per is ABSENT else str(p.min_per)
    avg = f"{p.avg_per.numerator}/{p.avg_per.denominator}"
    items = " ".join(str(i) for i in p.items)
    return (f"{items} #UTIL: {p.utility} #SUP: {p.support} "
            f"#MINPER: {min_per} #MAXPER: {p.max_per} #AVGPER: {avg}")


def _stats_record(result: MiningResult, args, parallel: bool, peak_mem: int) -> dict:
    m = result.metrics
    return {
        "k": args.k,
        "strategies": args.strategies,
        "raise_trace": {
            "after_piu": result.trace.after_piu,
            "after_pcud": result.trace.after_pcud,
            "after_pru": result.trace.after_pru,
        },
        "candidates_visited": m.candidates_visited,
        "lists_constructed": m.lists_constructed,
        "constructs_abandoned": m.constructs_abandoned,
        "final_minutil": m.peak_minutil,
        "pattern_count": len(result.patterns),
        "wall_time_s": m.wall_time,
        "peak_memory_bytes": peak_mem,
        "parallel": parallel,
        "candidate_counts_deterministic": not parallel,
    }


def cmd_mine(args) -> int:
    db = load_database(args.input)
    c = _constraints(args)
    config = StrategyConfig.full() if args.strategies == "full" else StrategyConfig.base()
    workers = args.seeded_parallel or 1
    tracemalloc.start()
    result = mine_topk(db, args.k, c, config, workers=workers)
    _, peak_mem = tracemalloc.get_traced_memory()
    tracemalloc.stop()

    lines = "".join(format_pattern(p) + "\n" for p in result.patterns)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    if args.stats:
        record = _stats_record(result, args, workers > 1, peak_mem)
        with open(args.stats, "w", encoding="utf-8") as fh:
            json.dump(record, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def cmd_compare(args) -> int:
    db = load_database(args.input)
    c = _constraints(args)
    rows = []
    for k in args.k_values:
        baseline = None
        for name, config in (("full", StrategyConfig.full()),
                             ("base", StrategyConfig.base())):
            t0 = time.perf_counter()
            result = mine_topk(db, k, c, config)
            elapsed = time.perf_counter() - t0
            if baseline is None:
                baseline = result.patterns
            elif result.patterns != baseline:
                diff = _first_difference(baseline, result.patterns)
                print(f"pattern mismatch between configs at k={k}: {diff}",
                      file=sys.stderr)
                return EXIT_MISMATCH
            rows.append({
                "k": k,
                "config": name,
                "candidates": result.metrics.candidates_visited,
                "listsConstructed": result.metrics.lists_constructed,
                "runtime": round(elapsed, 6),
                "finalMinutil": result.metrics.peak_minutil,
            })
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=["k", "config", "candidates", "listsConstructed",
                         "runtime", "finalMinutil"])
    writer.writeheader()
    writer.writerows(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if args.figures:
        from .report import render_compare_figures
        for path in render_compare_figures(rows, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def _first_difference(expected: list[Pattern], got: list[Pattern]) -> str:
    expected_sets = {p.items: p for p in expected}
    got_sets = {p.items: p for p in got}
    for items in expected_sets.keys() | got_sets.keys():
        if expected_sets.get(items) != got_sets.get(items):
            return f"itemset {' '.join(map(str, items))}"
    return "pattern order differs"


def run_verify(db, k, c, miner=mine_topk, max_items: int = DEFAULT_ITEM_CAP):
    """Mine and cross-check against the exhaustive oracle, then replay the
    floor: enumerate all qualifying itemsets at the minimum mined utility
    and confirm the mined patterns are exactly the top-k of that set.
    Returns (ok, message)."""
    mined = miner(db, k, c).patterns
    expected = brute_topk(db, k, c, max_items=max_items)
    if mined != expected:
        return False, _first_difference(expected, mined)
    if mined:
        floor = min(p.utility for p in mined)
        replay = sort_patterns(enumerate_phuis(db, c, floor, max_items=max_items), db)
        if mined != replay[:len(mined)]:
            return False, "floor replay disagrees: " + _first_difference(replay[:len(mined)], mined)
    return True, f"verified {len(mined)} patterns"


def cmd_verify(args) -> int:
    db = load_database(args.input)
    c = _constraints(args)
    ok, message = run_verify(db, args.k, c, max_items=args.max_items)
    print(("PASS: " if ok else "FAIL: ") + message)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puminer",
        description="Top-k periodic high-utility itemset mining",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine the top-k patterns")
    _add_common_flags(p_mine)
    p_mine.add_argument("--k", type=_positive_int, required=True)
    p_mine.add_argument("--strategies", choices=["base", "full"], default="full")
    p_mine.add_argument("--output", help="pattern file (default: stdout)")
    p_mine.add_argument("--stats", help="stats JSON file")
    p_mine.add_argument("--seeded-parallel", type=_positive_int, default=None,
                        metavar="N", help="explore sibling subtrees with N threads")
    p_mine.set_defaults(func=cmd_mine)

    p_cmp = sub.add_parser("compare", help="compare strategy configurations")
    _add_common_flags(p_cmp)
    p_cmp.add_argument("--k-values", required=True,
                       type=lambda s: [_positive_int(t) for t in s.split(",")],
                       help="comma-separated list of k values")
    p_cmp.add_argument("--output", help="CSV report (default: stdout)")
    p_cmp.add_argument("--figures", metavar="DIR",
                       help="also render summary figures into DIR")
    p_cmp.set_defaults(func=cmd_compare)

    p_ver = sub.add_parser("verify", help="cross-check the miner against the oracle")
    _add_common_flags(p_ver)
    p_ver.add_argument("--k", type=_positive_int, required=True)
    p_ver.add_argument("--max-items", type=_positive_int, default=DEFAULT_ITEM_CAP)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

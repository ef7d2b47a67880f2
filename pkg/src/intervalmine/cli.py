"""Command-line front end: mine patterns, generate data, self-check.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation (e.g. two pruning strategies disagreed on the result set).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import oracle
from .io import (
    fill_utilities,
    parse_dataset,
    parse_utilities,
    write_dataset,
    write_utilities,
)
from .miner import MiningConfig, Pattern, mine, resolve_threshold
from .model import DataError, ESequenceDataset, UtilityTable
from .transform import transform_dataset
from .utility import UpperBound, dataset_utility

USAGE_ERROR = 1
DATA_ERROR = 2
INTERNAL_ERROR = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="intervalmine", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine high-utility interval patterns")
    p_mine.add_argument("--data", required=True, help="interval dataset file")
    p_mine.add_argument("--utilities", help="label utility file")
    p_mine.add_argument(
        "--default-utility",
        type=float,
        default=None,
        help="utility for labels missing from the table",
    )
    p_mine.add_argument("--xi", type=float, required=True, help="minimum utility threshold")
    p_mine.add_argument(
        "--xi-mode",
        choices=("absolute", "relative"),
        default="absolute",
        help="interpret --xi as an absolute value or a fraction of total utility",
    )
    p_mine.add_argument("-K", type=int, required=True, help="maximum pattern length")
    p_mine.add_argument("-Z", type=int, required=True, help="maximum coincidence size")
    p_mine.add_argument(
        "--strategy",
        default="pdc",
        help="pruning strategy: none, ldc or pdc; comma-separated list with --benchmark",
    )
    p_mine.add_argument(
        "--benchmark",
        action="store_true",
        help="run every listed strategy and report per-strategy statistics",
    )
    p_mine.add_argument("--output", help="write the report here instead of stdout")
    p_mine.add_argument("--format", choices=("json", "table"), default="json")
    p_mine.add_argument("--threads", type=int, default=1)
    p_mine.add_argument(
        "--timings",
        action="store_true",
        help="include wall-clock times in the report (breaks byte-for-byte reproducibility)",
    )

    p_gen = sub.add_parser("gen", help="emit a random interval dataset")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--sequences", type=int, default=4)
    p_gen.add_argument("--max-intervals", type=int, default=6)
    p_gen.add_argument("--alphabet", type=int, default=4)
    p_gen.add_argument("--max-time", type=int, default=20)
    p_gen.add_argument("--max-duration", type=int, default=5)
    p_gen.add_argument("--max-utility", type=int, default=5)
    p_gen.add_argument("--output", help="dataset file (default: stdout)")
    p_gen.add_argument("--utilities-out", help="also write the generated utility table here")

    p_check = sub.add_parser(
        "check", help="verify the miner against brute force on small instances"
    )
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--instances", type=int, default=25)

    return parser


def _pattern_key(p: Pattern):
    return tuple(tuple(c.labels) for c in p.lsequence.coincidences)


def _render_pattern(p: Pattern) -> str:
    return "".join(str(c) for c in p.lsequence.coincidences)


def _stats_dict(stats, timings: bool) -> dict:
    d = asdict(stats)
    if not timings:
        d.pop("elapsed_ms")
    return d


def _json_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _table_report(report: dict) -> str:
    lines = []
    ds = report["dataset"]
    alphabet = ",".join(ds["alphabet"])
    lines.append(
        f"# dataset: {ds['sequences']} sequences, {ds['intervals']} intervals, "
        f"alphabet {alphabet}, total utility {ds['total_utility']!r}"
    )
    cfg = report["config"]
    lines.append(
        f"# threshold: {report['threshold']!r} "
        f"(xi={cfg['xi']!r}, mode={cfg['xi_mode']}, K={cfg['K']}, Z={cfg['Z']})"
    )
    for name, st in report["stats"].items():
        parts = [f"{k}={v!r}" for k, v in st.items()]
        lines.append(f"# strategy {name}: " + " ".join(parts))
    lines.append("pattern\tumax")
    for entry in report["patterns"]:
        text = "".join("{" + ",".join(c) + "}" for c in entry["pattern"])
        lines.append(f"{text}\t{entry['umax']!r}")
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_inputs(args) -> tuple[ESequenceDataset, UtilityTable]:
    dataset = parse_dataset(args.data)
    table = None
    if args.utilities:
        if os.path.exists(args.utilities):
            table = parse_utilities(args.utilities)
        elif args.default_utility is None:
            raise DataError(f"utility file not found: {args.utilities}")
    return dataset, fill_utilities(dataset, table, args.default_utility)


def _cmd_mine(args) -> int:
    strategies = [s.strip() for s in args.strategy.split(",") if s.strip()]
    if not strategies:
        print("intervalmine: error: no strategy given", file=sys.stderr)
        return USAGE_ERROR
    if len(strategies) > 1 and not args.benchmark:
        print(
            "intervalmine: error: multiple strategies require --benchmark",
            file=sys.stderr,
        )
        return USAGE_ERROR
    try:
        bounds = [UpperBound.from_name(s) for s in strategies]
    except ValueError as e:
        print(f"intervalmine: error: {e}", file=sys.stderr)
        return USAGE_ERROR

    try:
        dataset, table = _load_inputs(args)
        cdata = transform_dataset(dataset, table)
    except (DataError, OSError) as e:
        print(f"intervalmine: error: {e}", file=sys.stderr)
        return DATA_ERROR

    try:
        configs = [
            MiningConfig(
                xi=args.xi,
                max_length=args.K,
                max_size=args.Z,
                xi_mode=args.xi_mode,
                strategy=b,
            )
            for b in bounds
        ]
    except ValueError as e:
        print(f"intervalmine: error: {e}", file=sys.stderr)
        return USAGE_ERROR

    results = {}
    for name, cfg in zip(strategies, configs):
        results[name] = mine(cdata, cfg, threads=args.threads)

    pattern_sets = {
        name: {(_pattern_key(p), p.umax) for p in res[0]}
        for name, res in results.items()
    }
    reference = next(iter(pattern_sets.values()))
    for name, got in pattern_sets.items():
        if got != reference:
            print(
                f"intervalmine: internal error: strategy {name!r} "
                "produced a different pattern set",
                file=sys.stderr,
            )
            return INTERNAL_ERROR

    patterns = results[strategies[0]][0]
    report = {
        "config": {
            "data": args.data,
            "utilities": args.utilities,
            "default_utility": args.default_utility,
            "xi": args.xi,
            "xi_mode": args.xi_mode,
            "K": args.K,
            "Z": args.Z,
            "strategies": strategies,
            "threads": args.threads,
        },
        "dataset": {
            "sequences": len(dataset.sequences),
            "intervals": sum(len(s.intervals) for s in dataset.sequences),
            "alphabet": list(dataset.labels()),
            "total_utility": dataset_utility(cdata),
        },
        "threshold": resolve_threshold(configs[0], cdata),
        "patterns": [
            {"pattern": [list(c.labels) for c in p.lsequence.coincidences], "umax": p.umax}
            for p in patterns
        ],
        "stats": {
            name: _stats_dict(res[1], args.timings) for name, res in results.items()
        },
    }
    text = _json_report(report) if args.format == "json" else _table_report(report)
    _emit(text, args.output)
    return 0


def _cmd_gen(args) -> int:
    try:
        params = oracle.GeneratorParams(
            seed=args.seed,
            num_sequences=args.sequences,
            max_intervals_per_seq=args.max_intervals,
            alphabet_size=args.alphabet,
            max_time=args.max_time,
            max_duration=args.max_duration,
            max_external_utility=args.max_utility,
        )
    except ValueError as e:
        print(f"intervalmine: error: {e}", file=sys.stderr)
        return USAGE_ERROR
    dataset, table = oracle.random_dataset(params)
    if args.output:
        write_dataset(dataset, args.output)
    else:
        write_dataset(dataset, sys.stdout)
    if args.utilities_out:
        write_utilities(table, args.utilities_out)
    return 0


def _running_example() -> tuple[ESequenceDataset, UtilityTable]:
    rows = [
        (1, "A", 6, 12), (1, "B", 10, 17), (1, "C", 19, 25), (1, "E", 21, 23),
        (2, "A", 2, 7), (2, "B", 5, 10), (2, "D", 5, 12), (2, "C", 16, 22),
        (2, "E", 18, 20),
        (3, "B", 6, 12), (3, "A", 8, 14), (3, "C", 14, 20), (3, "E", 16, 18),
        (4, "B", 1, 5), (4, "C", 8, 14), (4, "E", 9, 12), (4, "F", 9, 12),
    ]
    text = "\n".join("\t".join(map(str, row)) for row in rows)
    import io as _io

    dataset = parse_dataset(_io.StringIO(text))
    table = UtilityTable({"A": 2, "B": 1, "C": 1, "D": 3, "E": 2, "F": 5})
    return dataset, table


def _check_instance(dataset, table, cfg: MiningConfig, label: str) -> bool:
    cdata = transform_dataset(dataset, table)
    expected = {
        (_pattern_key(p), p.umax) for p in oracle.brute_force_mine(cdata, cfg)
    }
    ok = True
    for bound in UpperBound:
        got_patterns, _ = mine(cdata, cfg.with_strategy(bound), threads=1)
        got = {(_pattern_key(p), p.umax) for p in got_patterns}
        if got != expected:
            print(
                f"check {label}: strategy {bound.value} disagrees with brute force "
                f"({len(got)} vs {len(expected)} patterns)",
                file=sys.stderr,
            )
            ok = False
    return ok


def _cmd_check(args) -> int:
    import random

    dataset, table = _running_example()
    failures = 0
    checks = 0
    for xi, k, z in ((22.0, 3, 2), (0.25, 3, 2), (0.0, 2, 2)):
        mode = "relative" if xi < 1 and xi > 0 else "absolute"
        cfg = MiningConfig(xi=xi, max_length=k, max_size=z, xi_mode=mode)
        checks += 1
        if not _check_instance(dataset, table, cfg, f"example xi={xi}"):
            failures += 1

    rng = random.Random(args.seed)
    for i in range(args.instances):
        params = oracle.GeneratorParams(
            seed=rng.randrange(2**31),
            num_sequences=rng.randint(1, 4),
            max_intervals_per_seq=rng.randint(1, 6),
            alphabet_size=rng.randint(1, 4),
        )
        ds, tab = oracle.random_dataset(params)
        cdata = transform_dataset(ds, tab)
        xi_abs = rng.uniform(0.0, dataset_utility(cdata))
        cfg = MiningConfig(xi=xi_abs, max_length=rng.randint(1, 3), max_size=rng.randint(1, 2))
        checks += 1
        if not _check_instance(ds, tab, cfg, f"random #{i}"):
            failures += 1

    if failures:
        print(f"check: {failures}/{checks} instances disagreed", file=sys.stderr)
        return INTERNAL_ERROR
    print(f"check: {checks} instances agree with brute force")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "mine":
            return _cmd_mine(args)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "check":
            return _cmd_check(args)
    except (DataError, OSError) as e:
        print(f"intervalmine: error: {e}", file=sys.stderr)
        return DATA_ERROR
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

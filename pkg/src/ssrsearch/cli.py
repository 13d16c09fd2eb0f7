"""Batch command-line front-end.

Exit codes: 0 success, 2 validation/usage error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import qubit_report, ratio_curves, ratio_rows_csv
from .errors import CapacityError, ValidationError
from .problem import load_instance
from .search import (ORACLE_AUTO, prep_support_report, run_fixed_point,
                     run_grover, verify_samples)


def _parse_int_list(text: str) -> list[int]:
    """Accept '2', '2,3,4', or '1-6' (inclusive range)."""
    text = text.strip()
    if "-" in text and "," not in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part]


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _add_common(p: argparse.ArgumentParser, instance: bool = True) -> None:
    if instance:
        p.add_argument("--instance", required=True, help="instance JSON path")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssrsearch",
        description="Quantum search for feasible job schedules on a dense statevector simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a search and write the probability trace")
    _add_common(p)
    p.add_argument("--mode", required=True, choices=["full", "reduced"])
    p.add_argument("--rounds", type=int, default=None,
                   help="reflection pairs (default: sufficient count for the instance)")
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--engine", choices=["fixed-point", "grover"], default="fixed-point")
    p.add_argument("--oracle", choices=["auto", "circuit", "mask"], default=ORACLE_AUTO)
    p.add_argument("--coins", choices=["reuse", "fresh"], default="reuse")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("analyze", help="space-size ratio sweep")
    _add_common(p, instance=False)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--machines", default="2", help="e.g. '2' or '2,3,4'")
    p.add_argument("--jobs", default="1-4", help="e.g. '1-6' or '1,2,3'")
    p.add_argument("--format", choices=["csv"], default="csv")

    p = sub.add_parser("resources", help="qubit totals and gate-count estimate")
    _add_common(p)
    p.add_argument("--mode", required=True, choices=["full", "reduced"])
    p.add_argument("--coins", choices=["reuse", "fresh"], default="reuse")
    p.add_argument("--no-gate-count", action="store_true")
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("verify", help="sample the final state against the classical predicates")
    _add_common(p)
    p.add_argument("--mode", required=True, choices=["full", "reduced"])
    p.add_argument("--rounds", type=int, default=None)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--shots", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", choices=["auto", "circuit", "mask"], default=ORACLE_AUTO)
    p.add_argument("--coins", choices=["reuse", "fresh"], default="reuse")

    p = sub.add_parser("prep-check", help="inspect the walk-prepared superposition")
    _add_common(p)
    p.add_argument("--coins", choices=["reuse", "fresh"], default="reuse")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--max-listed", type=int, default=256,
                   help="print the support patterns when the support is at most this large")
    return parser


def _cmd_simulate(args) -> int:
    instance = load_instance(args.instance)
    if args.engine == "grover":
        if args.rounds is None:
            raise ValidationError("grover engine requires --rounds")
        trace = run_grover(instance, args.mode, args.rounds,
                           coin_style=args.coins, oracle=args.oracle)
    else:
        trace = run_fixed_point(instance, args.mode, args.rounds, args.delta,
                                coin_style=args.coins, oracle=args.oracle)
    _emit(trace.to_csv_text() if args.format == "csv" else trace.to_json_text(), args.out)
    return 0


def _cmd_analyze(args) -> int:
    rows = ratio_curves(args.window, _parse_int_list(args.machines),
                        _parse_int_list(args.jobs))
    _emit(ratio_rows_csv(rows), args.out)
    return 0


def _cmd_resources(args) -> int:
    instance = load_instance(args.instance)
    report = qubit_report(instance, args.mode, coin_style=args.coins,
                          with_gate_count=not args.no_gate_count)
    _emit(report.to_json_text(), args.out)
    return 0


def _cmd_verify(args) -> int:
    instance = load_instance(args.instance)
    report = verify_samples(instance, args.mode, args.rounds, args.delta,
                            args.shots, args.seed, coin_style=args.coins,
                            oracle=args.oracle)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _cmd_prep_check(args) -> int:
    instance = load_instance(args.instance)
    report = prep_support_report(instance, coin_style=args.coins)
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", args.out)
        return 0
    lines = []
    if report["support_size"] <= args.max_listed:
        mag = report["magnitude_min"]
        lines += [f"{pat}  magnitude {mag:.6f}" for pat in report["patterns"]]
    lines.append(f"support: {report['support_size']} patterns "
                 f"(expected {report['expected_support_size']})")
    lines.append(f"magnitudes: [{report['magnitude_min']:.9f}, {report['magnitude_max']:.9f}]"
                 f" uniform={report['uniform']}")
    lines.append(f"coin-zero probability: {report['coin_zero_probability']:.9f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


_HANDLERS = {
    "simulate": _cmd_simulate,
    "analyze": _cmd_analyze,
    "resources": _cmd_resources,
    "verify": _cmd_verify,
    "prep-check": _cmd_prep_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

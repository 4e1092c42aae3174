"""Command-line front end.

Subcommands: mobius, interval, downset, series, check.  Exit codes:
0 success, 1 tool error, 2 usage error, 3 conjecture violations found.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional

from .analysis import (
    banding_report,
    jelinek_check,
    loglog_export,
    principal_series,
    Violation,
)
from .engine import ENGINE_NAMES, MobiusCache, MobiusEngine
from .errors import MobiusError, NotAPermutation
from .oscillation_fast import trace_oscillation
from .perms import Permutation, classify_oscillation, parse_permutation
from .poset import DEFAULT_DOWNSET_CAP, downset, interval, mobius_naive_column

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_VIOLATIONS = 3


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"range must look like LO..HI, got {text!r}"
        )
    try:
        return int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"range must look like LO..HI, got {text!r}"
        ) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permmobius",
        description=(
            "Möbius function on intervals of the permutation containment order"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--downset-cap",
            type=int,
            default=DEFAULT_DOWNSET_CAP,
            help="maximum upper-bound length for exhaustive enumeration",
        )
        p.add_argument(
            "--cache-bytes",
            type=int,
            default=None,
            help="memo budget in bytes (default: MOBIUS_CACHE_BYTES or 256 MiB)",
        )
        p.add_argument("--out", type=str, default=None, help="write output to file")

    p_mobius = sub.add_parser("mobius", help="Möbius value of one interval")
    p_mobius.add_argument("sigma", help="lower bound (one-line notation)")
    p_mobius.add_argument("pi", help="upper bound (one-line notation)")
    p_mobius.add_argument(
        "--engine", choices=ENGINE_NAMES, default="auto", help="evaluation engine"
    )
    p_mobius.add_argument(
        "--trace", action="store_true", help="print the evaluation tables first"
    )
    add_common(p_mobius)

    p_interval = sub.add_parser("interval", help="CSV dump of a closed interval")
    p_interval.add_argument("sigma")
    p_interval.add_argument("pi")
    p_interval.add_argument("--format", choices=("csv", "json"), default="csv")
    add_common(p_interval)

    p_downset = sub.add_parser("downset", help="all patterns of a permutation")
    p_downset.add_argument("pi")
    p_downset.add_argument("--format", choices=("csv", "json"), default="csv")
    add_common(p_downset)

    p_series = sub.add_parser("series", help="principal Möbius series")
    p_series.add_argument("--n-max", type=int, required=True)
    p_series.add_argument("--format", choices=("csv", "json"), default="csv")
    p_series.add_argument(
        "--loglog", action="store_true", help="emit (ln n, ln |mu|) rows"
    )
    add_common(p_series)

    p_check = sub.add_parser("check", help="verification suites")
    p_check.add_argument(
        "--suite",
        choices=("sign", "bound", "jelinek", "banding", "crosscheck"),
        required=True,
    )
    p_check.add_argument("--n-max", type=int, default=None)
    p_check.add_argument("--range", type=_parse_range, default=None)
    p_check.add_argument("--max-len", type=int, default=6)
    add_common(p_check)

    return parser


def _fmt_float(x: float) -> str:
    return format(x, ".12g")


def _violation_dict(v: Violation) -> dict:
    return dataclasses.asdict(v)


def _make_engine(args: argparse.Namespace) -> MobiusEngine:
    cache = MobiusCache(args.cache_bytes) if args.cache_bytes else MobiusCache()
    return MobiusEngine(cache=cache, downset_cap=args.downset_cap)


def _cmd_mobius(args: argparse.Namespace) -> tuple[list[str], int]:
    sigma = parse_permutation(args.sigma)
    pi = parse_permutation(args.pi)
    engine = _make_engine(args)
    lines: list[str] = []
    if args.trace:
        use_oscillation = args.engine == "oscillation" or (
            args.engine == "auto"
            and classify_oscillation(pi) is not None
            and (
                len(sigma.values) == 1 or classify_oscillation(sigma) is not None
            )
        )
        if use_oscillation:
            lines.extend(trace_oscillation(sigma, pi))
        else:
            for wc in engine.contributing_set(sigma, pi):
                mu_sa = engine.mobius(sigma, wc.alpha)
                lines.append(
                    f"alpha={wc.alpha} r={wc.r} weight={wc.weight} mu={mu_sa}"
                )
    lines.append(str(engine.mobius(sigma, pi, engine=args.engine)))
    return lines, EXIT_OK


def _cmd_interval(args: argparse.Namespace) -> tuple[list[str], int]:
    sigma = parse_permutation(args.sigma)
    pi = parse_permutation(args.pi)
    table = interval(sigma, pi, cap=args.downset_cap)
    if args.format == "json":
        payload = {
            "lower": str(table.lower),
            "upper": str(table.upper),
            "rows": [
                {"length": length, "permutation": str(member), "mu": mu}
                for length, member, mu in table.rows()
            ],
        }
        return [json.dumps(payload, sort_keys=True)], EXIT_OK
    return [
        f"{length},{member},{mu}" for length, member, mu in table.rows()
    ], EXIT_OK


def _cmd_downset(args: argparse.Namespace) -> tuple[list[str], int]:
    pi = parse_permutation(args.pi)
    groups = downset(pi, cap=args.downset_cap)
    rows = [
        (length, str(member))
        for length in sorted(groups)
        for member in groups[length]
    ]
    if args.format == "json":
        payload = [{"length": length, "permutation": text} for length, text in rows]
        return [json.dumps(payload, sort_keys=True)], EXIT_OK
    return [f"{length},{text}" for length, text in rows], EXIT_OK


def _cmd_series(args: argparse.Namespace) -> tuple[list[str], int]:
    records = principal_series(args.n_max)
    if args.loglog:
        rows, skipped = loglog_export(records, 4, args.n_max)
        print(f"skipped: {skipped}", file=sys.stderr)
        return [
            f"{_fmt_float(x)} {_fmt_float(y)}" for x, y in rows
        ], EXIT_OK
    if args.format == "json":
        payload = [
            {
                "n": rec.n,
                "mu": rec.mu_W,
                "abs": rec.M_abs,
                "ratio": rec.E if rec.E is not None else rec.O,
                "class_mod_12": rec.n % 12,
            }
            for rec in records
        ]
        return [json.dumps(payload)], EXIT_OK
    lines = ["n,kind,mu,abs,ratio,class_mod_12"]
    for rec in records:
        ratio = rec.E if rec.E is not None else rec.O
        for kind, mu in (("W", rec.mu_W), ("M", rec.mu_M)):
            lines.append(
                f"{rec.n},{kind},{mu},{rec.M_abs},{_fmt_float(ratio)},{rec.n % 12}"
            )
    return lines, EXIT_OK


def _crosscheck(args: argparse.Namespace) -> list[Violation]:
    from itertools import permutations as iter_permutations

    engine = _make_engine(args)
    violations: list[Violation] = []
    for n in range(1, args.max_len + 1):
        for vals in iter_permutations(range(1, n + 1)):
            pi = Permutation._wrap(vals)
            column = mobius_naive_column(pi, cap=args.downset_cap)
            for sigma, expected in column.items():
                actual = engine.mobius(sigma, pi)
                if actual != expected:
                    violations.append(
                        Violation(
                            n,
                            f"crosscheck sigma={sigma} pi={pi}",
                            expected,
                            actual,
                        )
                    )
    return violations


def _cmd_check(args: argparse.Namespace) -> tuple[list[str], int]:
    constants: Optional[dict] = None
    deviations: list[Violation] = []
    if args.suite == "sign":
        n_max = args.n_max or 5000
        lo, hi = 4, n_max
        records = principal_series(n_max)
        violations = []
        for rec in records:
            if rec.n % 2 == 0 and rec.mu_W >= 0:
                violations.append(Violation(rec.n, "sign-even", "< 0", rec.mu_W))
            elif rec.n % 2 == 1 and rec.mu_W <= 0:
                violations.append(Violation(rec.n, "sign-odd", "> 0", rec.mu_W))
    elif args.suite == "bound":
        n_max = args.n_max or 5000
        lo, hi = 4, n_max
        records = principal_series(n_max)
        violations = [
            Violation(rec.n, "bound-2^n", f"<= 2^{rec.n}", rec.M_abs)
            for rec in records
            if rec.M_abs > (1 << rec.n)
        ]
    elif args.suite == "jelinek":
        lo, hi = args.range or (51, 10000)
        records = principal_series(2 * hi + 1)
        violations = jelinek_check(lo, hi, records)
    elif args.suite == "banding":
        lo, hi = args.range or (1000, 20000)
        records = principal_series(hi)
        report = banding_report(lo, hi, records)
        violations = list(report.violations)
        deviations = list(report.deviations)
        constants = {k: report.constants[k] for k in sorted(report.constants)}
    else:  # crosscheck
        lo, hi = 1, args.max_len
        violations = _crosscheck(args)

    payload = {
        "range": [lo, hi],
        "violations": [_violation_dict(v) for v in violations],
        "constants": constants,
    }
    if deviations:
        payload["deviations"] = [_violation_dict(v) for v in deviations]
    code = EXIT_VIOLATIONS if violations else EXIT_OK
    return [json.dumps(payload, sort_keys=True)], code


_COMMANDS = {
    "mobius": _cmd_mobius,
    "interval": _cmd_interval,
    "downset": _cmd_downset,
    "series": _cmd_series,
    "check": _cmd_check,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        lines, code = _COMMANDS[args.command](args)
    except NotAPermutation as exc:
        parser.print_usage(sys.stderr)
        print(f"permmobius: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MobiusError as exc:
        print(f"permmobius: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface for the certified harmonic-number toolkit.

Four subcommands:

  eval     print H(n), exactly or as a decimal enclosure
  bounds   check the bound catalog at one index
  verify   run the verification sweeps and serialize the report
  compare  the refinement-containment report on its own

Exit codes: 0 when everything passes (equalities count as passes), 1 when
any check fails, 2 for usage errors, 3 when a comparison stayed undecided
at the precision cap.  Reports are deterministic: identical flags produce
identical bytes regardless of --jobs.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Sequence

from . import specfun
from .ball import Ball, MAX_PRECISION, MIN_PRECISION, bits_of, enclosure_str
from .bounds import bound_ids, check_bound
from .report import (
    CheckRecord,
    VerificationReport,
    ball_mid_str,
    ball_rad_str,
    render_table,
)
from .verify import CHECK_NAMES, refinement_check, verify_all

__all__ = ["build_parser", "main"]

_DEFAULT_BITS = 128
_TABLE_DIGITS = 24

BOUNDS_CSV_HEADER = [
    "bound_id",
    "n",
    "lower_mid",
    "lower_rad",
    "target_mid",
    "target_rad",
    "upper_mid",
    "upper_rad",
    "verdict",
]


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return value


def _precision_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    lo, hi = bits_of(MIN_PRECISION), bits_of(MAX_PRECISION)
    if not lo <= value <= hi:
        raise argparse.ArgumentTypeError(f"precision must be between {lo} and {hi} bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-bounds",
        description="Certified harmonic-number enclosures and bound verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_precision(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--precision",
            type=_precision_arg,
            default=_DEFAULT_BITS,
            metavar="BITS",
            help=f"working precision in bits (default {_DEFAULT_BITS})",
        )

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            dest="fmt",
            choices=("table", "json", "csv"),
            default="table",
            help="output format (default table)",
        )

    p = sub.add_parser("eval", help="print H(n) exactly or as a decimal enclosure")
    p.add_argument("n", type=_positive_int, help="index of the harmonic number")
    p.add_argument(
        "--exact",
        action="store_true",
        help="print the exact fraction instead of a decimal enclosure",
    )
    add_precision(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bounds", help="check the bound catalog at one index")
    p.add_argument("n", type=_positive_int, help="index to check the bounds at")
    p.add_argument(
        "--bound",
        choices=("all",) + bound_ids(),
        default="all",
        help="restrict to one catalog entry (default all)",
    )
    add_format(p)
    add_precision(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run the verification sweeps")
    p.add_argument(
        "--max-n",
        dest="max_n",
        type=_positive_int,
        default=1000,
        help="sweep indices 1..max_n (default 1000)",
    )
    p.add_argument(
        "--checks",
        default=None,
        metavar="LIST",
        help="comma-separated subset of: " + ", ".join(CHECK_NAMES),
    )
    p.add_argument(
        "--jobs",
        type=_positive_int,
        default=1,
        help="worker processes for the bound sweep (default 1)",
    )
    add_format(p)
    add_precision(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="refinement-containment report")
    p.add_argument(
        "--max-n",
        dest="max_n",
        type=_positive_int,
        default=1000,
        help="compare over indices 2..max_n (default 1000)",
    )
    add_format(p)
    add_precision(p)
    p.set_defaults(func=cmd_compare)

    return parser


def _enc(b: Ball) -> str:
    return enclosure_str(b, _TABLE_DIGITS)


def cmd_eval(args: argparse.Namespace) -> int:
    h = specfun.harmonic_exact(args.n)
    if args.exact:
        print(h)
    else:
        print(enclosure_str(Ball.from_fraction(h, args.precision)))
    return 0


def _bounds_exit(verdicts: Sequence[str]) -> int:
    if "fail" in verdicts:
        return 1
    if "undecided" in verdicts:
        return 3
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    ids = bound_ids() if args.bound == "all" else (args.bound,)
    checks = [check_bound(bid, args.n, args.precision) for bid in ids]

    if args.fmt == "table":
        rows = [["bound", "lower", "target", "upper", "margin", "verdict"]]
        for chk in checks:
            rows.append(
                [
                    chk.bound_id,
                    _enc(chk.lower),
                    _enc(chk.target),
                    _enc(chk.upper),
                    _enc(chk.margin),
                    chk.verdict_label(),
                ]
            )
        print(render_table(rows))
    elif args.fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(BOUNDS_CSV_HEADER)
        for chk in checks:
            writer.writerow(
                [
                    chk.bound_id,
                    str(chk.n),
                    ball_mid_str(chk.lower),
                    ball_rad_str(chk.lower),
                    ball_mid_str(chk.target),
                    ball_rad_str(chk.target),
                    ball_mid_str(chk.upper),
                    ball_rad_str(chk.upper),
                    chk.verdict_label(),
                ]
            )
    else:
        rep = VerificationReport()
        for chk in checks:
            rep.append(
                CheckRecord(
                    check="bound",
                    params=(("id", chk.bound_id), ("n", chk.n)),
                    verdict=chk.verdict,
                    margin=chk.margin,
                    precision_bits=chk.precision_bits,
                )
            )
        print(rep.to_json())
    return _bounds_exit([chk.verdict.value for chk in checks])


def _emit_report(rep: VerificationReport, fmt: str) -> int:
    if fmt == "json":
        print(rep.to_json())
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(rep.to_csv_rows())
    else:
        s = rep.summary()
        print(
            "summary: pass={pass} equality={equality} fail={fail} undecided={undecided}".format(**s)
        )
        print(render_table(rep.to_csv_rows()))
    return rep.exit_code()


def cmd_verify(args: argparse.Namespace) -> int:
    if args.max_n < 3:
        print("error: verify needs --max-n >= 3", file=sys.stderr)
        return 2
    if args.checks is None:
        checks = None
    else:
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
        unknown = sorted(set(checks) - set(CHECK_NAMES))
        if unknown:
            print(f"error: unknown checks: {', '.join(unknown)}", file=sys.stderr)
            return 2
        if not checks:
            print("error: --checks must name at least one check", file=sys.stderr)
            return 2
    rep = verify_all(args.max_n, args.precision, checks=checks, jobs=args.jobs)
    return _emit_report(rep, args.fmt)


def cmd_compare(args: argparse.Namespace) -> int:
    if args.max_n < 2:
        print("error: compare needs --max-n >= 2", file=sys.stderr)
        return 2
    rep = refinement_check(args.max_n, args.precision)
    return _emit_report(rep, args.fmt)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

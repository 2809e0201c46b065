"""Command-line interface.

Subcommands: sweep (grid records as CSV/JSON), verify (closed-form vs
pipeline gate), critical (closed-form vs numeric critical dilatons),
monogamy (identity residual gate), classify (steering-regime intervals).

Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 output
I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .dilaton import RootNotFoundError, critical_dilatons, find_critical_numeric
from .sweep import (
    ALL_PAIRS,
    ConfigError,
    SweepConfig,
    monogamy_grid,
    sweep_records,
    verify_grid,
    write_csv,
    write_json,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

CRITICAL_TOL = 1e-6
_DEFAULT_OMEGAS = (0.5, 1.0, 1.5, 2.0)


def _float_list(text: str):
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _pair_list(text: str):
    names = {p.value: p for p in ALL_PAIRS}
    pairs = []
    for part in text.split(","):
        part = part.strip().lower()
        if not part:
            continue
        if part not in names:
            raise argparse.ArgumentTypeError(
                f"unknown pair {part!r}, expected a subset of ab,abbar,bbbar"
            )
        pairs.append(names[part])
    if not pairs:
        raise argparse.ArgumentTypeError("expected at least one pair")
    return pairs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mass", type=float, default=1.0, help="black-hole mass M > 0")
    common.add_argument(
        "--omega",
        type=_float_list,
        default=list(_DEFAULT_OMEGAS),
        metavar="F,F,...",
        help="mode frequencies (comma separated)",
    )
    common.add_argument("--d-min", type=float, default=0.0, help="grid start (default 0)")
    common.add_argument(
        "--d-max", type=float, default=None, help="grid end (default mass*(1-1e-6))"
    )
    common.add_argument("--points", type=int, default=2001, help="grid points per omega")
    common.add_argument(
        "--pairs",
        type=_pair_list,
        default=list(ALL_PAIRS),
        metavar="ab,abbar,bbbar",
        help="bipartitions to include",
    )
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="dilaton-steering",
        description="Steering, CHSH, and concurrence of fermionic modes near a dilaton black hole.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="emit grid records").set_defaults(
        func=cmd_sweep
    )
    sub.add_parser(
        "verify", parents=[common], help="closed forms vs density-matrix pipeline"
    ).set_defaults(func=cmd_verify)
    sub.add_parser(
        "critical", parents=[common], help="closed-form vs numeric critical dilatons"
    ).set_defaults(func=cmd_critical)
    sub.add_parser(
        "monogamy", parents=[common], help="steering-entanglement identity residuals"
    ).set_defaults(func=cmd_monogamy)
    sub.add_parser(
        "classify", parents=[common], help="steering-regime intervals per bipartition"
    ).set_defaults(func=cmd_classify)
    return parser


def _config(args) -> SweepConfig:
    cfg = SweepConfig(
        mass=args.mass,
        omegas=tuple(args.omega),
        d_min=args.d_min,
        d_max=args.d_max,
        points=args.points,
        pairs=tuple(p for p in ALL_PAIRS if p in args.pairs),
        fmt=args.fmt,
        out=args.out,
    )
    cfg.validate()
    return cfg


def _check_scalar_params(args) -> None:
    if not args.mass > 0.0:
        raise ConfigError(f"mass must be positive, got {args.mass}")
    if any(not w > 0.0 for w in args.omega):
        raise ConfigError(f"omegas must all be positive, got {args.omega}")


def cmd_sweep(args) -> int:
    cfg = _config(args)
    header, rows = sweep_records(cfg)
    writer = write_csv if cfg.fmt == "csv" else write_json
    if cfg.out is None:
        writer(header, rows, sys.stdout)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as stream:
            writer(header, rows, stream)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    report = verify_grid(cfg)
    for dev in sorted(report.deviations, key=lambda d: (d.pair.value, d.measure)):
        print(
            f"{dev.pair.value:6s} {dev.measure:13s} max|closed-pipeline| = {dev.value:.3e} "
            f"(omega={dev.omega:g}, D={dev.dilaton:.17g})"
        )
    if report.passed:
        print(f"PASS: all deviations within {report.gate:g}")
        return EXIT_OK
    w = report.worst
    print(
        f"FAIL: {w.pair.value} {w.measure} deviates {w.value:.3e} at "
        f"omega={w.omega:g}, D={w.dilaton:.17g} (gate {report.gate:g})",
        file=sys.stderr,
    )
    return EXIT_VERIFY_FAIL


def cmd_critical(args) -> int:
    _check_scalar_params(args)
    all_ok = True
    for omega in sorted(args.omega):
        points = critical_dilatons(args.mass, omega)
        print(f"omega = {omega:g}:")
        for name, closed, in_range in (
            ("d0", points.d0, points.d0_in_range),
            ("d1", points.d1, points.d1_in_range),
            ("d2", points.d2, points.d2_in_range),
        ):
            if not in_range:
                print(f"  {name}  closed = {closed:.8f}  out of range [0, {args.mass:g})")
                continue
            numeric = find_critical_numeric(args.mass, omega, name)
            delta = abs(numeric - closed)
            ok = delta <= CRITICAL_TOL
            all_ok = all_ok and ok
            flag = "" if ok else "  MISMATCH"
            print(f"  {name}  closed = {closed:.8f}  numeric = {numeric:.8f}  |delta| = {delta:.2e}{flag}")
    if not all_ok:
        print(f"FAIL: numeric and closed-form critical points differ beyond {CRITICAL_TOL:g}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def cmd_monogamy(args) -> int:
    cfg = _config(args)
    report = monogamy_grid(cfg)
    print(f"max |r1| = {report.max_r1:.3e}")
    print(f"max |r2| = {report.max_r2:.3e}")
    for name, value in (("r3", report.max_r3), ("r4", report.max_r4)):
        if value is None:
            print(f"max |{name}| = n/a (no grid point above the steering birth dilaton)")
        else:
            print(f"max |{name}| = {value:.3e}  (D above birth point only)")
    if report.passed:
        print(f"PASS: residuals within {report.gate:g}")
        return EXIT_OK
    name, value, omega, dil = report.worst
    print(
        f"FAIL: |{name}| = {value:.3e} at omega={omega:g}, D={dil:.17g} (gate {report.gate:g})",
        file=sys.stderr,
    )
    return EXIT_VERIFY_FAIL


def cmd_classify(args) -> int:
    _check_scalar_params(args)
    for omega in sorted(args.omega):
        points = critical_dilatons(args.mass, omega)
        mass = args.mass
        print(f"omega = {omega:g}:")
        print(f"  ab      two_way      (0, {mass:g})")
        if points.d0 > 0.0:
            print(
                f"  abbar   one_way_fwd  (0, {points.d0:.8f}]   "
                f"two_way      ({points.d0:.8f}, {mass:g})"
            )
        else:
            print(f"  abbar   two_way      (0, {mass:g})")
        if points.d2 > 0.0:
            print(
                f"  bbbar   one_way_fwd  (0, {points.d2:.8f})   "
                f"no_way       [{points.d2:.8f}, {mass:g})"
            )
        else:
            print(f"  bbbar   no_way       (0, {mass:g})")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RootNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

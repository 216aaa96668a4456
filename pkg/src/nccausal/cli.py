"""Command line front end.

Subcommands: check (batch causal queries from a scenario file), scan-cone
(coherent-displacement verdict grid as CSV), bound-curve (level-jump bounds
as CSV), zitter (oscillation period and crossing bound for a given mass),
verify (closed-form vs operator-level comparison).  Exit codes: 0 success,
2 when any verdict is Undetermined, 1 on schema or IO errors.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import sys

from . import __version__
from .moyal import coherent_causal, level_jump_bound
from .scenario import ScenarioError, load_scenario, records_to_lines, run_check, run_verify
from .spacetime import SI_UNITS, UnitSystem
from .two_sheet import (
    cross_sheet_bound_natural,
    cross_sheet_bound_seconds,
    zitterbewegung_period,
)

__all__ = ["main", "build_parser", "scan_cone_rows", "bound_curve_rows", "zitter_report"]


def scan_cone_rows(
    re_min: float = -1.0,
    re_max: float = 1.0,
    re_steps: int = 101,
    im_min: float = -1.0,
    im_max: float = 1.0,
    im_steps: int = 101,
) -> list[tuple[float, float, int]]:
    """Displacement grid with the coherent-cone verdict at every node.

    Row-major over the real axis, then the imaginary axis; the causal set is
    exactly {Re >= |Im|}.
    """
    if re_steps < 1 or im_steps < 1:
        raise ValueError("grid must have at least one step per axis")
    import numpy as np

    res = np.linspace(re_min, re_max, re_steps)
    ims = np.linspace(im_min, im_max, im_steps)
    rows = []
    for re in res:
        for im in ims:
            rows.append((float(re), float(im), int(coherent_causal(0.0, complex(re, im)))))
    return rows


def bound_curve_rows(theta: float, n_max: int) -> list[tuple[int, float]]:
    """Rows (n, level-jump bound) for n = 0..n_max; strictly decreasing."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return [(n, level_jump_bound(n, theta)) for n in range(n_max + 1)]


def zitter_report(mass: float, units: UnitSystem, m_natural: float = 1.0) -> dict:
    """Period, crossing bound, and natural-units bound for the given mass."""
    period = zitterbewegung_period(mass, units)
    return {
        "mass_kg": mass,
        "hbar": units.hbar,
        "c": units.c,
        "zitterbewegung_period_s": period,
        "cross_sheet_bound_s": cross_sheet_bound_seconds(mass, units),
        "m_natural": m_natural,
        "cross_sheet_bound_natural": cross_sheet_bound_natural(m_natural),
    }


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nccausal",
        description="causal relations between states on noncommutative spacetime models",
    )
    parser.add_argument("--version", action="version", version=f"nccausal {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, default=None, help="output file (default stdout)")

    overrides = argparse.ArgumentParser(add_help=False)
    overrides.add_argument("--tol", type=float, default=None)
    overrides.add_argument("--seed", type=int, default=None)
    overrides.add_argument("--truncation", type=int, default=None)
    overrides.add_argument("--segments", type=int, default=None)
    overrides.add_argument("--budget", type=int, default=None)

    check = sub.add_parser("check", parents=[common, overrides], help="run a scenario's causal queries")
    check.add_argument("scenario", type=str)
    check.add_argument("--verbose", action="store_true")

    verify = sub.add_parser(
        "verify", parents=[common, overrides], help="closed-form vs operator-level comparison"
    )
    verify.add_argument("scenario", type=str)
    verify.add_argument("--verbose", action="store_true")

    scan = sub.add_parser("scan-cone", parents=[common], help="coherent cone verdict grid as CSV")
    scan.add_argument("--re-min", type=float, default=-1.0)
    scan.add_argument("--re-max", type=float, default=1.0)
    scan.add_argument("--re-steps", type=int, default=101)
    scan.add_argument("--im-min", type=float, default=-1.0)
    scan.add_argument("--im-max", type=float, default=1.0)
    scan.add_argument("--im-steps", type=int, default=101)

    curve = sub.add_parser("bound-curve", parents=[common], help="level-jump bounds as CSV")
    curve.add_argument("--theta", type=float, required=True)
    curve.add_argument("--n-max", type=int, required=True)

    zit = sub.add_parser("zitter", parents=[common], help="oscillation period and crossing bound")
    zit.add_argument("--mass", type=float, required=True, help="mass in kg")
    zit.add_argument("--hbar", type=float, default=SI_UNITS.hbar)
    zit.add_argument("--c", type=float, default=SI_UNITS.c)
    zit.add_argument("--m-natural", type=float, default=1.0)
    zit.add_argument("--json", action="store_true", help="print JSON instead of text")

    return parser


def _write_lines(lines: list[str], out: str | None):
    text = "\n".join(lines)
    if lines:
        text += "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _apply_overrides(scenario, args):
    for key in ("tol", "seed", "truncation", "segments", "budget"):
        value = getattr(args, key, None)
        if value is not None:
            scenario.options[key] = value
    return scenario


def _cmd_scenario(args, runner) -> int:
    try:
        scenario = _apply_overrides(load_scenario(args.scenario), args)
        records, undetermined = runner(scenario, verbose=args.verbose)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    _write_lines(records_to_lines(scenario, records, timestamp), args.out)
    return 2 if undetermined else 0


def _cmd_scan_cone(args) -> int:
    rows = scan_cone_rows(
        args.re_min, args.re_max, args.re_steps, args.im_min, args.im_max, args.im_steps
    )
    lines = ["re,im,causal"] + [f"{re!r},{im!r},{c}" for re, im, c in rows]
    _write_lines(lines, args.out)
    return 0


def _cmd_bound_curve(args) -> int:
    try:
        rows = bound_curve_rows(args.theta, args.n_max)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    lines = ["n,bound"] + [f"{n},{b!r}" for n, b in rows]
    _write_lines(lines, args.out)
    return 0


def _cmd_zitter(args) -> int:
    try:
        units = UnitSystem(hbar=args.hbar, c=args.c)
        report = zitter_report(args.mass, units, args.m_natural)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload)
    if args.json and args.out is None:
        sys.stdout.write(payload)
    else:
        print(f"oscillation period : {report['zitterbewegung_period_s']:.6e} s")
        print(f"cross-sheet bound  : {report['cross_sheet_bound_s']:.6e} s  (half period)")
        print(
            f"natural units      : pi/(2*|m|) = {report['cross_sheet_bound_natural']:.10f} "
            f"at |m| = {report['m_natural']}"
        )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return _cmd_scenario(args, run_check)
    if args.command == "verify":
        return _cmd_scenario(args, run_verify)
    if args.command == "scan-cone":
        return _cmd_scan_cone(args)
    if args.command == "bound-curve":
        return _cmd_bound_curve(args)
    if args.command == "zitter":
        return _cmd_zitter(args)
    raise AssertionError(f"unhandled command {args.command}")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())

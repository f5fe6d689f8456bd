"""Command-line front end: verification suites, the extremal integrator,
flag completion, model export, and the root listing."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import cartan, control, f4roots, nullflag, prolong
from .linalg import solve_exact
from .report import Report

SUITES = ("cartan", "control", "nullflag", "prolong", "roots", "all")


class CliError(Exception):
    """Bad command-line input; maps to exit code 2."""


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"malformed rational {text!r}: {exc}") from exc


def _fraction_csv(text: str, expect: int, what: str) -> List[Fraction]:
    vals = [_fraction(t) for t in text.split(",")]
    if len(vals) != expect:
        raise CliError(f"{what} needs {expect} comma-separated rationals, got {len(vals)}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument(
        "--samples", type=int, default=None, help="override the sample count of a suite"
    )
    common.add_argument(
        "--point",
        type=str,
        default=None,
        help="comma-separated rationals; initial base point for `integrate`"
        " (15 values: z, x1..x4, y1..y4, x12..x34)",
    )
    parser = argparse.ArgumentParser(
        prog="f4prolong",
        description="Exact verification of the rank-8 model distribution, its"
        " singular-velocity cone, null-flag prolongation, and F4 root"
        " correspondence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)

    p_int = sub.add_parser(
        "integrate", parents=[common], help="RK4 on the constrained Hamiltonian system"
    )
    p_int.add_argument("--step", type=float, default=1e-3)
    p_int.add_argument("--tmax", type=float, default=1.0)
    p_int.add_argument(
        "--covector",
        type=str,
        default=None,
        help="7 rationals s,r12,r13,r14,r23,r24,r34 (default 0,1,0,0,0,0,0)",
    )
    p_int.add_argument(
        "--controls",
        type=str,
        default=None,
        help="8 rationals u1..u4,v1..v4 (default 0,0,1,0,1,0,0,0)",
    )
    p_int.add_argument("--csv", type=str, default=None, help="write the trajectory as CSV")

    p_flag = sub.add_parser(
        "flag", parents=[common], help="complete and check a null flag from free coordinates"
    )
    p_flag.add_argument(
        "--coords",
        type=str,
        required=True,
        help="9 rationals z11,z13,z14,z15,z16,z21,z24,z25,z31",
    )

    sub.add_parser("export-model", parents=[common], help="emit the frame and coframe")

    p_roots = sub.add_parser("roots", parents=[common], help="positive root utilities")
    p_roots.add_argument("--list", action="store_true", dest="list_roots")

    return parser


def _emit_report(report: Report, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_json(), indent=2))
        return
    for item in report.items:
        line = f"[{item.status}] {item.id}: {item.description}"
        if item.status != "pass" and (item.computed or item.expected):
            line += f" (computed: {item.computed}; expected: {item.expected})"
        print(line)
    c = report.counts()
    print(
        f"suite {report.suite}: {c['pass']} pass, {c['fail']} fail,"
        f" {c['paper-discrepancy']} paper-discrepancy ({report.elapsed_ms} ms)"
    )


def _run_suite(name: str, seed: int, samples: Optional[int]) -> Report:
    t0 = time.monotonic()
    report = Report(name, seed=seed)
    if name == "cartan":
        report.extend(cartan.verify_suite(seed, samples or 5))
    elif name == "control":
        report.extend(control.verify_suite(seed, svc_samples=samples or 200))
    elif name == "nullflag":
        report.extend(nullflag.verify_suite(seed, samples or 100))
    elif name == "prolong":
        items, _, _ = prolong.verify_suite(seed, samples or 5)
        report.extend(items)
    elif name == "roots":
        report.extend(f4roots.verify_suite())
    elif name == "all":
        report.extend(_prefixed("cartan", cartan.verify_suite(seed, samples or 5)))
        report.extend(
            _prefixed("control", control.verify_suite(seed, svc_samples=samples or 200))
        )
        report.extend(_prefixed("nullflag", nullflag.verify_suite(seed, samples or 100)))
        items, _, table = prolong.verify_suite(seed, samples or 5)
        report.extend(_prefixed("prolong", items))
        report.extend(_prefixed("roots", f4roots.verify_suite(table)))
    report.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return report


def _prefixed(prefix: str, items):
    for item in items:
        item.id = f"{prefix}:{item.id}"
    return items


def _initial_state(
    base: Optional[Sequence[Fraction]], cov: Optional[Sequence[Fraction]]
) -> Dict[str, Fraction]:
    """Initial cotangent state with (p, q) solved from the eight constraints."""
    init, _ = control.standard_initial_data()
    if base is None and cov is None:
        return init
    chart = control.cotangent_chart()
    if base is not None:
        for name, val in zip(cartan.BASE_VARIABLES, base):
            init[name] = val
    if cov is not None:
        for name, val in zip(("s",) + tuple(f"r{n}" for n in control.R_NAMES), cov):
            init[name] = val
    unknowns = tuple(f"p{i}" for i in range(1, 5)) + tuple(f"q{i}" for i in range(1, 5))
    for u in unknowns:
        init[u] = Fraction(0)
    rows = []
    rhs = []
    for poly in control.constraint_polys(chart).values():
        # affine in (p, q): the derivative in each unknown depends on base only
        rows.append([poly.diff(u).evaluate(init) for u in unknowns])
        rhs.append(-poly.evaluate(init))
    sol = solve_exact(rows, rhs)
    if sol is None:
        raise CliError("no covector fiber satisfies the constraints at this point")
    for u, val in zip(unknowns, sol):
        init[u] = val
    return init


def _cmd_integrate(args) -> int:
    base = (
        _fraction_csv(args.point, 15, "--point") if args.point else None
    )
    cov = (
        _fraction_csv(args.covector, 7, "--covector") if args.covector else None
    )
    init = _initial_state(base, cov)
    if args.controls:
        c = _fraction_csv(args.controls, 8, "--controls")
        controls = control.ControlVector(tuple(c[:4]), tuple(c[4:]))
    else:
        _, controls = control.standard_initial_data()
    try:
        traj, drift = control.integrate_extremal(init, controls, args.step, args.tmax)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("time," + ",".join(traj.chart.variables) + "\n")
            for t, st in zip(traj.times, traj.states):
                fh.write(f"{t!r}," + ",".join(repr(x) for x in st) + "\n")
    if args.json:
        out = drift.to_json()
        out["seed"] = args.seed
        out["steps"] = len(traj.times) - 1
        print(json.dumps(out, indent=2))
    else:
        print(
            f"integrated {len(traj.times) - 1} steps to t = {args.tmax}"
            f" (step {args.step})"
        )
        print(f"max constraint drift: {drift.max_constraint_drift!r}")
        print(f"max (s, r) drift:     {drift.max_sr_drift!r}")
        if args.csv:
            print(f"trajectory written to {args.csv}")
    return 0


def _cmd_flag(args) -> int:
    vals = _fraction_csv(args.coords, 9, "--coords")
    coords = dict(zip(nullflag.FREE_COORDS, vals))
    frame = nullflag.complete_null_flag(coords)
    try:
        v = nullflag.lambda_to_v(frame)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    items = nullflag.verify_flag_nullity(v)
    report = Report("flag", seed=args.seed, items=list(items))
    if args.json:
        out = report.to_json()
        out["lambda_frame"] = [
            [str(x) for x in f] for f in (frame.f1, frame.f2, frame.f3)
        ]
        out["v_frame"] = [[str(x) for x in e] for e in v.etas]
        print(json.dumps(out, indent=2))
    else:
        for label, f in zip(("f1", "f2", "f3"), (frame.f1, frame.f2, frame.f3)):
            print(f"{label} = ({', '.join(str(x) for x in f)})")
        for label, e in zip(("eta1", "eta2", "eta3", "eta4"), v.etas):
            print(f"{label} = ({', '.join(str(x) for x in e)})")
        _emit_report(report, False)
    return 0 if report.ok else 1


def _cmd_export_model(args) -> int:
    model = cartan.build_model()
    out = {
        "schema": "f4prolong/1",
        "chart": list(model.chart.variables),
        "frame": {name: model.frame[name].to_json() for name in model.frame_order},
        "coframe": {name: model.coframe[name].to_json() for name in model.coframe_order},
    }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for name in model.frame_order:
            print(repr(model.frame[name]))
        for name in model.coframe_order:
            print(repr(model.coframe[name]))
    return 0


def _cmd_roots(args) -> int:
    roots = f4roots.generate_positive_roots()
    rows = [
        {"root": list(r), "height": f4roots.height(r), "alpha4": r[3]} for r in roots
    ]
    if args.json:
        print(json.dumps({"schema": "f4prolong/1", "positive_roots": rows}, indent=2))
    else:
        for row in rows:
            print(
                f"{tuple(row['root'])}  height {row['height']:2d}"
                f"  alpha4-coefficient {row['alpha4']}"
            )
    return 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = _run_suite(args.suite, args.seed, args.samples)
            _emit_report(report, args.json)
            return 0 if report.ok else 1
        if args.command == "integrate":
            return _cmd_integrate(args)
        if args.command == "flag":
            return _cmd_flag(args)
        if args.command == "export-model":
            return _cmd_export_model(args)
        if args.command == "roots":
            return _cmd_roots(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run())

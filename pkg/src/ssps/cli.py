"""Command-line front end: construct, verify, sweep and simulate.

Data goes to files (or stdout when no --out is given) as CSV with '#'
metadata lines or as versioned JSON; a short human summary goes to stdout
when data is written to a file.  Exit codes: 0 pass, 1 usage error,
2 no solution exists, 3 verification failure, 4 instability.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .dde import (
    HistorySegment,
    VerifyTolerances,
    residual,
    simulate_method_of_steps,
    verify_ssps,
)
from .errors import DomainError, NoSolutionError, SspsError, StabilityError
from .hamiltonian import exp_m1_r, sine_r
from .solutions import THRESHOLD, exp_ssps, sine_ssps

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_SOLUTION = 2
EXIT_VERIFY_FAIL = 3
EXIT_UNSTABLE = 4


@dataclass(frozen=True)
class ReportDocument:
    """Stable JSON schema of a verification run."""

    model: str
    r: float
    modulus: float
    offset_c: float
    period: float
    residual_max: float
    antisymmetry_max: float
    period_defect_max: float
    quad_order: int
    grid_points: int
    passed: bool
    tool_version: str

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "r": self.r,
            "modulus": self.modulus,
            "offset_c": self.offset_c,
            "period": self.period,
            "residual_max": self.residual_max,
            "antisymmetry_max": self.antisymmetry_max,
            "period_defect_max": self.period_defect_max,
            "quad_order": self.quad_order,
            "grid_points": self.grid_points,
            "pass": self.passed,
            "tool_version": self.tool_version,
        }


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _solution_for(model: str, r: float):
    """Build (solution, nonlinearity, modulus, offset) for a model name."""
    if model == "sine":
        sol = sine_ssps(r)
        return sol, sine_r(r), sol.m.k, 0.0
    sol = exp_ssps(r)
    return sol, exp_m1_r(r), sol.k.k, sol.c


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _csv_text(meta: dict, header: list[str], rows, trailing: dict | None = None) -> str:
    lines = [f"# {key} = {value}" for key, value in meta.items()]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    if trailing:
        lines.extend(f"# {key} = {value}" for key, value in trailing.items())
    return "\n".join(lines) + "\n"


def _usage_error(message: str) -> int:
    sys.stderr.write(f"ssps: error: {message}\n")
    return EXIT_USAGE


def cmd_construct(args) -> int:
    if args.samples < 2:
        return _usage_error("--samples must be at least 2")
    sol, _, modulus, offset_c = _solution_for(args.model, args.r)
    t = np.linspace(0.0, 2.0, args.samples)
    x = np.asarray(sol.x(t))
    dx = np.asarray(sol.dx(t))
    meta = {
        "model": args.model,
        "r": _fmt(args.r),
        "modulus": _fmt(modulus),
        "offset_c": _fmt(offset_c),
        "period": _fmt(2.0),
        "tool_version": __version__,
    }
    if args.format == "csv":
        text = _csv_text(meta, ["t", "x", "dx"], zip(t, x, dx))
    else:
        doc = {
            "model": args.model,
            "r": args.r,
            "modulus": modulus,
            "offset_c": offset_c,
            "period": 2.0,
            "tool_version": __version__,
            "samples": args.samples,
            "t": [float(v) for v in t],
            "x": [float(v) for v in x],
            "dx": [float(v) for v in dx],
        }
        text = json.dumps(doc, indent=2) + "\n"
    _emit(text, args.out)
    if args.out is not None:
        print(f"construct {args.model} r={args.r:g}: wrote {args.samples} samples to {args.out}")
    if args.plot:
        from . import plotting

        plotting.solution_figure(t, x, dx, f"{args.model} model, r = {args.r:g}", args.plot)
    return EXIT_OK


def cmd_verify(args) -> int:
    sol, f, modulus, _ = _solution_for(args.model, args.r)
    report = verify_ssps(
        sol, f, grid_points=args.grid, order=args.quad_order,
        tolerances=VerifyTolerances.uniform(args.tol),
    )
    doc = ReportDocument(
        model=args.model,
        r=args.r,
        modulus=modulus,
        offset_c=report.offset_c,
        period=2.0,
        residual_max=report.residual_max,
        antisymmetry_max=report.antisymmetry_max,
        period_defect_max=report.period_defect_max,
        quad_order=report.quad_order,
        grid_points=report.grid_points,
        passed=report.passed,
        tool_version=__version__,
    )
    _emit(json.dumps(doc.to_dict(), indent=2) + "\n", args.out)
    verdict = "PASS" if report.passed else "FAIL"
    if args.out is not None:
        print(
            f"verify {args.model} r={args.r:g}: {verdict} "
            f"(residual {report.residual_max:.3e}, symmetry {report.antisymmetry_max:.3e}, "
            f"period {report.period_defect_max:.3e}, tol {args.tol:g})"
        )
    if args.plot:
        from . import plotting

        t = np.linspace(0.0, 2.0, args.grid)
        res = residual(sol, f, t, args.quad_order)
        sym = np.asarray(sol.x(t)) + np.asarray(sol.x(t - 1.0)) - report.offset_c
        per = np.asarray(sol.x(t + 2.0)) - np.asarray(sol.x(t))
        plotting.verify_figure(
            t, res, sym, per, f"{args.model} model, r = {args.r:g}: {verdict}", args.plot
        )
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_sweep(args) -> int:
    if args.points < 2:
        return _usage_error("--points must be at least 2")
    if not args.r_from < args.r_to:
        return _usage_error("--r-from must be strictly below --r-to")
    if args.r_from <= THRESHOLD:
        sys.stderr.write("ssps: no SSPS exists: r <= pi^2/2 within the sweep range\n")
        return EXIT_NO_SOLUTION
    grid_points, order = 201, 32
    t = np.linspace(0.0, 2.0, grid_points)
    rows = []
    for r in np.linspace(args.r_from, args.r_to, args.points):
        sol, f, modulus, offset_c = _solution_for(args.model, float(r))
        res_max = float(np.max(np.abs(residual(sol, f, t, order))))
        amplitude = sol.amplitude if args.model == "sine" else float(np.asarray(sol.x(0.0)))
        complement = sol.m.kprime if args.model == "sine" else sol.k.kprime
        rows.append((float(r), modulus, offset_c, amplitude, res_max, complement))
    meta = {
        "model": args.model,
        "r_from": _fmt(args.r_from),
        "r_to": _fmt(args.r_to),
        "points": args.points,
        "residual_grid_points": grid_points,
        "residual_quad_order": order,
        "tool_version": __version__,
    }
    # the complement column carries the monotonicity evidence once the modulus
    # itself saturates at 1.0 in double precision (exp model, r beyond ~75)
    header = ["r", "modulus", "offset_c", "amplitude", "residual_max", "modulus_complement"]
    _emit(_csv_text(meta, header, rows), args.out)
    if args.out is not None:
        print(f"sweep {args.model} [{args.r_from:g}, {args.r_to:g}]: wrote {args.points} rows to {args.out}")
    if args.plot:
        from . import plotting

        cols = list(zip(*rows))
        plotting.sweep_figure(
            cols[0], cols[1], cols[3], cols[4],
            f"{args.model} model sweep", args.plot,
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    h = args.step
    if h <= 0:
        return _usage_error("--step must be positive")
    n_exact = 1.0 / h
    n = round(n_exact)
    if abs(n_exact - n) > 1e-9 * max(n, 1):
        return _usage_error(f"1/step must be an integer (got 1/step = {n_exact!r})")
    if n < 8:
        return _usage_error("--step must be at most 1/8 of the delay span")
    if args.horizon < 1.0:
        return _usage_error("--horizon must be at least 1")

    if args.seed == "closed-form":
        sol, f, _, _ = _solution_for(args.model, args.r)
        history = HistorySegment.from_callable(sol.x, n)
        closed = sol.x
    else:
        f = sine_r(args.r) if args.model == "sine" else exp_m1_r(args.r)
        history = HistorySegment.zero(n)
        closed = lambda t: np.zeros_like(np.asarray(t, dtype=float))

    try:
        sim = simulate_method_of_steps(f, history, args.horizon, h)
    except (StabilityError, DomainError) as exc:
        sys.stderr.write(f"ssps: simulation unstable: {exc}\n")
        return EXIT_UNSTABLE

    x_closed = np.asarray(closed(sim.ts))
    abs_err = np.abs(sim.xs - x_closed)
    meta = {
        "model": args.model,
        "r": _fmt(args.r),
        "seed": args.seed,
        "step": _fmt(h),
        "horizon": _fmt(args.horizon),
        "tool_version": __version__,
    }
    text = _csv_text(
        meta,
        ["t", "x_sim", "x_closed", "abs_err"],
        zip(sim.ts, sim.xs, x_closed, abs_err),
        trailing={"max_abs_err": _fmt(float(np.max(abs_err)))},
    )
    _emit(text, args.out)
    if args.out is not None:
        print(
            f"simulate {args.model} r={args.r:g} seed={args.seed}: "
            f"max |x_sim - x_closed| = {float(np.max(abs_err)):.3e}"
        )
    if args.plot:
        from . import plotting

        plotting.simulate_figure(
            sim.ts, sim.xs, x_closed,
            f"{args.model} model, r = {args.r:g}, h = {h:g}", args.plot,
        )
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ssps",
        description="Construct and verify symmetric period-2 solutions of "
        "x'(t) = -int_0^1 f(x(t-s)) ds for f = r sin x and f = r(e^x - 1).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_r(p):
        p.add_argument("--model", choices=("sine", "exp"), required=True)
        p.add_argument("--r", type=float, required=True, help="feedback strength")

    p = sub.add_parser("construct", help="sample a closed-form solution over one period")
    add_model_r(p)
    p.add_argument("--samples", type=int, default=2001)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None, metavar="PNG")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the residual and symmetry verification suite")
    add_model_r(p)
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--quad-order", type=int, default=32)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None, metavar="PNG")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate modulus/offset/amplitude over a strength range")
    p.add_argument("--model", choices=("sine", "exp"), required=True)
    p.add_argument("--r-from", type=float, required=True)
    p.add_argument("--r-to", type=float, required=True)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None, metavar="PNG")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="cross-validate by the method-of-steps integrator")
    add_model_r(p)
    p.add_argument("--horizon", type=float, default=6.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--seed", choices=("closed-form", "zero"), default="closed-form")
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None, metavar="PNG")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NoSolutionError as exc:
        sys.stderr.write(f"ssps: {exc}\n")
        return EXIT_NO_SOLUTION
    except (ValueError, SspsError) as exc:
        sys.stderr.write(f"ssps: error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

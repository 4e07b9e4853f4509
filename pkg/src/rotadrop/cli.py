"""Command-line front end.

    rotadrop classify --a 1 --b 1
    rotadrop solve    --a 1 --b 1 [--c 0.5] [--format csv|json] [--out FILE]
    rotadrop report   --a 1 --b 1 [--c 0.5]
    rotadrop verify   --a 0 --b 1
    rotadrop mesh     --a 1 --b 1 --out drop.obj [--n-theta 64 --n-s 64]
    rotadrop sweep    --a 0,0.5,1 --b 1,2

Exit status: 0 success, 1 failed verification, 2 bad arguments, 3 parameters
outside the domain of the requested operation.  Errors are written to stderr
as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import __version__
from .bounds import verify
from .core import DomainError, DropParams, classify, critical_radii, find_c0, first_integral
from .mesh import export_obj, laplace_residual, revolve
from .ode import StepControl, StopReason, close_profile, curve_to_csv, solve_profile
from .quantities import quantity_report

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, allow_nan=False)


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_params(p: argparse.ArgumentParser, *, c: bool = True) -> None:
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--u0", type=float, default=0.0)
    if c:
        p.add_argument("--c", type=float, default=None, help="truncation radius")


def _add_control(p: argparse.ArgumentParser) -> None:
    p.add_argument("--step", type=float, default=StepControl.step)
    p.add_argument("--samples", type=int, default=StepControl.samples)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rotadrop", description="Axisymmetric rotating drops with 2H = a r^2 + b.")
    parser.add_argument("--version", action="version", version=f"rotadrop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="surface type, c0 and critical radii")
    _add_params(p)
    p.add_argument("--d", type=float, default=0.0, help="first-integral constant (with --c only)")

    p = sub.add_parser("solve", help="generating curve as CSV or JSON")
    _add_params(p)
    _add_control(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("report", help="area, volume, height, energy, stability")
    _add_params(p)
    _add_control(p)

    p = sub.add_parser("verify", help="run the inequality checks")
    _add_params(p)
    _add_control(p)

    p = sub.add_parser("mesh", help="revolve into an OBJ mesh and check 2H = a r^2 + b")
    _add_params(p)
    _add_control(p)
    p.add_argument("--n-theta", type=int, default=64)
    p.add_argument("--n-s", type=int, default=64)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="report over a grid of (a, b)")
    p.add_argument("--a", type=_float_list, required=True)
    p.add_argument("--b", type=_float_list, required=True)
    p.add_argument("--u0", type=float, default=0.0)
    p.add_argument("--c", type=float, default=None)
    _add_control(p)
    return parser


def _control(args) -> StepControl:
    try:
        return StepControl(step=args.step, samples=args.samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _solve(a: float, b: float, u0: float, c, control: StepControl, *, reach_c: bool = True):
    curve = solve_profile(DropParams(a, b, u0), r_max=c, control=control)
    if curve.stop_reason is StopReason.STEP_LIMIT:
        raise DomainError("integration did not reach the stop condition (step limit)")
    if reach_c and c is not None and curve.stop_reason is StopReason.VERTICAL_TANGENT \
            and c > curve.c_end * (1 + 1e-12):
        raise DomainError(f"c = {c} lies beyond the maximal radius c0 = {curve.c_end}")
    return curve


def _curve(args, *, reach_c: bool = True):
    return _solve(args.a, args.b, args.u0, args.c, _control(args), reach_c=reach_c)


def cmd_classify(args, out) -> int:
    if args.d != 0 and args.c is None:
        raise UsageError("--d is only used together with --c")
    p = DropParams(args.a, args.b, args.u0, args.d)
    if args.c is not None:
        # first-integral evaluation only; no closed profile needed
        res = {"a": args.a, "b": args.b, "c": args.c, "d": args.d,
               "first_integral": first_integral(args.c, p)}
        if args.a == 0 and args.b == 0:
            out.write(_dumps(res) + "\n")
            return EXIT_OK
    else:
        res = {}
    cp = p.canonical()
    kind = classify(args.a, args.b)
    r1 = r2 = None
    if cp.a < 0:
        r1, r2 = critical_radii(cp.a, cp.b)
    res.update({"a": args.a, "b": args.b, "type": kind.value, "c0": find_c0(args.a, args.b),
                "r1": r1, "r2": r2, "flipped": cp.flipped})
    out.write(_dumps(res) + "\n")
    return EXIT_OK


def cmd_solve(args, out) -> int:
    # a --c past c0 just ends at the vertical tangent; stop_reason says so
    curve = _curve(args, reach_c=False)
    if args.format == "csv":
        text = curve_to_csv(curve)
    else:
        text = _dumps({
            "a": curve.params.a, "b": curve.params.b, "u0": curve.params.u0,
            "flipped": curve.params.flipped,
            "type": curve.surface_type.value if curve.surface_type else None,
            "stop_reason": curve.stop_reason.value,
            "c_end": curve.c_end,
            "columns": ["s", "r", "u", "psi"],
            "samples": curve.samples.tolist(),
        }) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _report_dict(a: float, b: float, u0: float, c, control: StepControl) -> dict:
    curve = _solve(a, b, u0, c, control)
    rep = quantity_report(curve, c=None if c is None else curve.c_end)
    d = {"a": a, "b": b, "type": curve.surface_type.value if curve.surface_type else None}
    d.update(rep.to_dict())
    return d


def cmd_report(args, out) -> int:
    out.write(_dumps(_report_dict(args.a, args.b, args.u0, args.c, _control(args))) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    rep = verify(_curve(args))
    out.write(_dumps(rep.to_list()) + "\n")
    return EXIT_OK if rep.all_passed else EXIT_VERIFY_FAILED


def cmd_mesh(args, out) -> int:
    curve = _curve(args)
    if args.c is None:
        profile = close_profile(curve)
    else:
        profile = curve
    mesh = revolve(profile, n_theta=args.n_theta, n_s=args.n_s)
    nbytes = export_obj(mesh, args.out)
    res = laplace_residual(mesh).to_dict()
    res.update({"vertices": mesh.n_vertices, "triangles": int(len(mesh.triangles)),
                "bytes": nbytes, "closed": mesh.closed,
                "self_intersecting": mesh.self_intersecting})
    out.write(_dumps(res) + "\n")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    control = _control(args)
    grid = [(a, b) for a in args.a for b in args.b]

    def one(ab):
        a, b = ab
        try:
            return _report_dict(a, b, args.u0, args.c, control)
        except DomainError as exc:
            return {"a": a, "b": b, "error": "domain", "message": str(exc)}

    with ThreadPoolExecutor() as pool:
        lines = [_dumps(d) for d in pool.map(one, grid)]
    out.write("".join(line + "\n" for line in lines))
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "report": cmd_report,
    "verify": cmd_verify,
    "mesh": cmd_mesh,
    "sweep": cmd_sweep,
}


def _fail(kind: str, message: str, code: int, err) -> int:
    err.write(_dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE, err)
    except DomainError as exc:
        return _fail("domain", str(exc), EXIT_DOMAIN, err)
    except OSError as exc:
        return _fail("io", str(exc), EXIT_USAGE, err)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

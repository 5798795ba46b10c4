"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import audit as audit_mod
from .core import ParamLine, Point
from .errors import MinkConicError
from .lens import classify, completeness
from .quadric import ImplicitQuadric, format_rational
from .sampler import DEFAULT_RESOLUTION, Window, autofit_window, emit_csv, emit_svg, sample
from .synth import Circle, Ellipse, Hyperbola, Parabola, classify_membership, implicit

EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 2, 3, 4


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _tuple_of(n: int, conv=_rational):
    def parse(text: str):
        parts = text.split(",")
        if len(parts) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated values, got {text!r}")
        return tuple(conv(p) for p in parts)
    return parse


def _float_window(text: str):
    try:
        vals = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("window is xmin,xmax,ymin,ymax")
    return vals


def _add_spec_args(p: argparse.ArgumentParser, allow_quadric: bool):
    p.add_argument("--kind", choices=("circle", "ellipse", "hyperbola", "parabola"))
    p.add_argument("--focus", type=_tuple_of(2), metavar="X,Y")
    p.add_argument("--focus2", type=_tuple_of(2), metavar="X,Y")
    p.add_argument("--k2", type=_rational, metavar="R")
    p.add_argument("--line", type=_tuple_of(4), metavar="a,b,c,d")
    if allow_quadric:
        p.add_argument("--quadric", type=_tuple_of(6), metavar="A,B,C,D,E,F")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minkconic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="print the derived implicit quadric")
    _add_spec_args(p, allow_quadric=False)

    p = sub.add_parser("classify", help="Euclidean type and completeness")
    _add_spec_args(p, allow_quadric=True)

    p = sub.add_parser("check-point", help="membership verdict for a point")
    _add_spec_args(p, allow_quadric=False)
    p.add_argument("--point", type=_tuple_of(2), required=True, metavar="X,Y")

    p = sub.add_parser("audit", help="compare typeset formulas with derived ones")
    _add_spec_args(p, allow_quadric=False)
    p.add_argument("--probes", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("plot", help="sample the real locus to SVG/CSV")
    _add_spec_args(p, allow_quadric=True)
    p.add_argument("--window", type=_float_window, metavar="xmin,xmax,ymin,ymax")
    p.add_argument("--res", type=int, default=DEFAULT_RESOLUTION)
    p.add_argument("--svg", required=True)
    p.add_argument("--csv")
    p.add_argument("--workers", type=int, default=1)
    return parser


class UsageError(Exception):
    pass


def spec_from_args(args):
    need = {"circle": ("focus", "k2"), "ellipse": ("focus", "focus2", "k2"),
            "hyperbola": ("focus", "focus2", "k2"), "parabola": ("focus", "line")}
    if args.kind is None:
        raise UsageError("--kind is required")
    missing = [f"--{n}" for n in need[args.kind] if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.kind} needs {', '.join(missing)}")
    p = Point(*args.focus)
    if args.kind == "circle":
        return Circle(p, args.k2)
    if args.kind == "ellipse":
        return Ellipse(p, Point(*args.focus2), args.k2)
    if args.kind == "hyperbola":
        return Hyperbola(p, Point(*args.focus2), args.k2)
    return Parabola(p, ParamLine(*args.line))


def _quadric_and_spec(args):
    if getattr(args, "quadric", None) is not None:
        return ImplicitQuadric(*args.quadric), None
    spec = spec_from_args(args)
    return implicit(spec), spec


def cmd_synth(args, out):
    q, _ = _quadric_and_spec(args)
    out.write(q.canonical().render() + "\n")


def cmd_classify(args, out):
    q, _ = _quadric_and_spec(args)
    cls = classify(q)
    verdict = completeness(cls)
    out.write(f"{cls.kind.value}, {verdict.value.value}\n")
    out.write(f"delta: {format_rational(cls.delta)}\n")
    out.write(f"det3: {format_rational(cls.det3)}\n")


def cmd_check_point(args, out):
    spec = spec_from_args(args)
    if not isinstance(spec, (Ellipse, Hyperbola)):
        raise UsageError("check-point needs --kind ellipse or hyperbola")
    v = classify_membership(Point(*args.point), spec)
    out.write(f"{v.branch.value}\n")
    out.write(f"d1^2: {format_rational(v.d1_sq.value)} {v.d1_sq.causal}\n")
    out.write(f"d2^2: {format_rational(v.d2_sq.value)} {v.d2_sq.causal}\n")
    out.write(f"k^2: {format_rational(spec.k2)}\n")


def cmd_audit(args, out):
    spec = spec_from_args(args)
    report = audit_mod.audit(spec, args.probes, seed=args.seed, workers=args.workers)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        out.write(f"{report.case_id}: {len(report.findings)} finding(s) -> {args.out}\n")
    else:
        out.write(text)


def cmd_plot(args, out):
    q, spec = _quadric_and_spec(args)
    if args.window is not None:
        w = Window(*args.window, resolution=args.res)
    else:
        w = autofit_window(q, resolution=args.res)
    curve = sample(q, w, workers=args.workers)
    foci, directrix = [], None
    if spec is not None:
        foci.append(spec.p.as_float())
        if isinstance(spec, (Ellipse, Hyperbola)):
            foci.append(spec.q.as_float())
        if isinstance(spec, Parabola):
            ln = spec.line
            directrix = ((float(ln.b), float(ln.d)), (float(ln.a), float(ln.c)))
    emit_svg(curve, w, args.svg, foci=foci, directrix=directrix)
    if args.csv:
        emit_csv(curve, args.csv)
    out.write(f"{curve.kind.value}: {curve.component_count} component(s), "
              f"{len(curve.polylines)} polyline(s)\n")


COMMANDS = {"synth": cmd_synth, "classify": cmd_classify, "check-point": cmd_check_point,
            "audit": cmd_audit, "plot": cmd_plot}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"minkconic: error: {exc}\n")
        return EXIT_USAGE
    except MinkConicError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        err.write(f"IOError: {exc}\n")
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())

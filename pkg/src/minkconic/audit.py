"""Compare closed-form equations as typeset in the source text with derived ones.

The ``printed_*`` functions reproduce the typeset coefficients exactly,
typos included.  :func:`audit` diffs them against :mod:`minkconic.synth`,
evaluates them on oracle member points and records discrepancy codes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .core import ParamLine, Point, as_fraction
from .errors import NullDirectrix
from .lens import discriminant
from .probes import member_points
from .quadric import ImplicitQuadric, evaluate_float, scalar_equivalent
from .synth import Circle, ConicSpec, Ellipse, Hyperbola, Parabola, implicit

RESIDUAL_TOL = 1e-8

# Figure caption: focus (2, 3), directrix (t, 2t)
FIGURE1_FOCUS = Point(2, 3)
FIGURE1_LINE = ParamLine(1, 0, 2, 0)
FIGURE1_CAPTION = ImplicitQuadric(-3, -12, -4, -36, -18, 15)


def printed_ellipse_quadric(p: Point, q: Point, k2, x_factor: str = "literal") -> ImplicitQuadric:
    """The typeset ellipse equation.

    ``x_factor="literal"`` keeps the x-term inner factor as typeset,
    ``q2^2 - p1^2 + q2^2 - p2^2 - k^2``; ``"q1"`` swaps the first ``q2^2`` for
    ``q1^2`` to match the y-term.
    """
    p1, p2, q1, q2 = p.x, p.y, q.x, q.y
    k2 = as_fraction(k2)
    inner_y = q1 ** 2 - p1 ** 2 + q2 ** 2 - p2 ** 2 - k2
    if x_factor == "literal":
        inner_x = q2 ** 2 - p1 ** 2 + q2 ** 2 - p2 ** 2 - k2
    elif x_factor == "q1":
        inner_x = inner_y
    else:
        raise ValueError(f"unknown x_factor reading {x_factor!r}")
    A = 4 * ((q1 - p1) ** 2 - k2)
    B = 8 * (q1 - p1) * (p2 - q2)
    C = 4 * ((p2 - q2) ** 2 + k2)
    D = 4 * ((q1 - p1) * inner_x + 2 * k2 * q1)
    E = 4 * ((p2 - q2) * inner_y - 2 * k2 * q2)
    F = (q1 ** 2 - p1 ** 2 + q2 ** 2 - p2 ** 2 - k2) ** 2 - 4 * k2 * q1 ** 2 + 4 * k2 * q2 ** 2
    return ImplicitQuadric(A, B, C, D, E, F)


def printed_parabola_quadric(p: Point, line: ParamLine) -> ImplicitQuadric:
    a, b, c, d = line.a, line.b, line.c, line.d
    m = a * a - c * c
    if m == 0:
        raise NullDirectrix(f"a^2 == c^2 for directrix {line}")
    p1, p2 = p.x, p.y
    A = a ** 2 * m
    B = -2 * a * c * m
    C = c ** 2 * (3 * a ** 2 - c ** 2)
    D = 2 * (a ** 3 * c * d - b * c ** 4 - a * c ** 3 * d - a ** 2 * b * c ** 2 - m ** 2 * p1)
    E = 2 * (m * p2 + a ** 3 * b * c - a ** 4 * d + a ** 2 * c ** 2 * d - a * b * c ** 3)
    F = (m * (p1 ** 2 - p2 ** 2) + a ** 2 * b ** 2 * c ** 2 + a ** 4 * d ** 2
         - 2 * a ** 3 * b * c * d - a ** 2 * c ** 2 * d ** 2 + b ** 2 * c ** 4
         + 2 * a * b * c ** 3 * d)
    return ImplicitQuadric(A, B, C, D, E, F)


def printed_delta_ellipse(p: Point, q: Point, k2) -> Fraction:
    k2 = as_fraction(k2)
    return 64 * k2 * ((p.y - q.y) ** 2 - (p.x - q.x) ** 2 + k2)


def printed_delta_parabola(line: ParamLine) -> Fraction:
    a, c = line.a, line.c
    return 8 * a ** 4 * c ** 2 * (c ** 2 - a ** 2)


@dataclass
class AuditReport:
    case_id: str
    kind: str
    printed_quadric: ImplicitQuadric | None
    derived_quadric: ImplicitQuadric
    scalar_equivalent: bool | None
    printed_delta: Fraction | None
    derived_delta: Fraction
    delta_sign_match: bool | None
    membership_residuals: list[tuple[tuple[float, float], float]] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)
    variants: dict[str, dict] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def printed_applicable(self) -> bool:
        return self.printed_quadric is not None

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "kind": self.kind,
            "printed_applicable": self.printed_applicable,
            "printed_quadric": _quadric_json(self.printed_quadric),
            "derived_quadric": _quadric_json(self.derived_quadric),
            "scalar_equivalent": self.scalar_equivalent,
            "printed_delta": _rat(self.printed_delta),
            "derived_delta": _rat(self.derived_delta),
            "delta_sign_match": self.delta_sign_match,
            "membership_residuals": [
                {"point": [x, y], "residual": r} for (x, y), r in self.membership_residuals
            ],
            "findings": list(self.findings),
            "variants": self.variants,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def _rat(value) -> str | None:
    if value is None:
        return None
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _quadric_json(q: ImplicitQuadric | None) -> dict | None:
    if q is None:
        return None
    return {name: _rat(v) for name, v in zip("ABCDEF", q.coeffs)}


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _normalized_residual(q: ImplicitQuadric, pt: tuple[float, float]) -> float:
    return evaluate_float(q.to_floats(normalize=True), *pt)


def _residuals(q: ImplicitQuadric, points) -> list[tuple[tuple[float, float], float]]:
    return [(pt, _normalized_residual(q, pt)) for pt in points]


def _term_findings(prefix: str, printed: ImplicitQuadric, derived: ImplicitQuadric, scale) -> list[str]:
    """Codes for coefficient groups that differ once ``derived`` is scaled."""
    d = [scale * c for c in derived.coeffs]
    pc = printed.coeffs
    out = []
    names = {0: "X2", 1: "XY", 2: "Y2"}
    for i, name in names.items():
        if pc[i] != d[i]:
            out.append(f"{prefix}_{name}_MISMATCH")
    if pc[3] != d[3] or pc[4] != d[4]:
        out.append(f"{prefix}_LINEAR_TERM_MISMATCH")
    if pc[5] != d[5]:
        out.append(f"{prefix}_CONSTANT_TERM_MISMATCH")
    return out


def case_id_for(spec: ConicSpec) -> str:
    def pt(p):
        return f"{_short(p.x)},{_short(p.y)}"

    if isinstance(spec, Circle):
        return f"circle[p={pt(spec.p)};k2={_short(spec.k2)}]"
    if isinstance(spec, (Ellipse, Hyperbola)):
        name = "ellipse" if isinstance(spec, Ellipse) else "hyperbola"
        return f"{name}[p={pt(spec.p)};q={pt(spec.q)};k2={_short(spec.k2)}]"
    ln = spec.line
    return f"parabola[p={pt(spec.p)};line={','.join(_short(v) for v in (ln.a, ln.b, ln.c, ln.d))}]"


def _short(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def is_figure1(spec: ConicSpec) -> bool:
    return isinstance(spec, Parabola) and spec.p == FIGURE1_FOCUS and spec.line == FIGURE1_LINE


def audit(spec: ConicSpec, probe_count: int = 32, seed: int = 0, workers: int = 1,
          tol: float = RESIDUAL_TOL) -> AuditReport:
    derived = implicit(spec)
    derived_delta = discriminant(derived)
    probes = member_points(spec, probe_count, seed=seed, workers=workers) if probe_count > 0 else []
    kind = type(spec).__name__.lower()

    if isinstance(spec, Circle):
        return AuditReport(
            case_id=case_id_for(spec), kind=kind, printed_quadric=None,
            derived_quadric=derived, scalar_equivalent=None, printed_delta=None,
            derived_delta=derived_delta, delta_sign_match=None,
            membership_residuals=_residuals(derived, probes),
            notes=["no printed counterpart; residuals are for the derived quadric"],
        )

    if isinstance(spec, (Ellipse, Hyperbola)):
        # the printed ellipse equation doubles as the hyperbola's
        printed = printed_ellipse_quadric(spec.p, spec.q, spec.k2)
        printed_delta = printed_delta_ellipse(spec.p, spec.q, spec.k2)
        findings = _term_findings("ELLIPSE", printed, derived, 1)
        compared_delta = derived_delta
        delta_code = "ELLIPSE_DELTA_MISMATCH"
        variants = {}
        for reading in ("literal", "q1"):
            vq = printed_ellipse_quadric(spec.p, spec.q, spec.k2, x_factor=reading)
            res = _residuals(vq, probes)
            variants[reading] = {
                "quadric": _quadric_json(vq),
                "scalar_equivalent": scalar_equivalent(vq, derived),
                "max_abs_residual": max((abs(r) for _, r in res), default=0.0),
            }
    else:
        printed = printed_parabola_quadric(spec.p, spec.line)
        printed_delta = printed_delta_parabola(spec.line)
        # the typeset equation reads as (a^2 - c^2) times the derived one
        scale = spec.line.norm2
        findings = _term_findings("PARABOLA", printed, derived, scale)
        compared_delta = scale * scale * derived_delta
        delta_code = "PARABOLA_DELTA_MISMATCH"
        variants = {}
        if is_figure1(spec):
            variants["figure1_caption"] = {
                "quadric": _quadric_json(FIGURE1_CAPTION),
                "scalar_equivalent": scalar_equivalent(FIGURE1_CAPTION, derived),
                "equals_printed_general": FIGURE1_CAPTION == printed,
            }
            if FIGURE1_CAPTION != printed:
                findings.append("FIGURE1_CAPTION_MISMATCH")

    if printed_delta != compared_delta:
        findings.append(delta_code)
    residuals = _residuals(printed, probes)
    if any(abs(r) > tol for _, r in residuals):
        findings.append("PRINTED_MEMBERSHIP_RESIDUAL")
    equivalent = scalar_equivalent(printed, derived)
    if not equivalent and not findings:
        findings.append("NOT_SCALAR_EQUIVALENT")

    return AuditReport(
        case_id=case_id_for(spec), kind=kind, printed_quadric=printed,
        derived_quadric=derived, scalar_equivalent=equivalent,
        printed_delta=printed_delta, derived_delta=derived_delta,
        delta_sign_match=_sign(printed_delta) == _sign(derived_delta),
        membership_residuals=residuals, findings=findings, variants=variants,
    )

"""Implicit equations of Minkowski conics, derived from their definitions.

Ellipse and hyperbola are both given by ``d1 +- d2 = k`` with Minkowski
distances ``d1, d2`` to the foci.  Squaring twice removes every root::

    k^4 - 2 k^2 (d1^2 + d2^2) + (d1^2 - d2^2)^2 = 0

and since ``d1^2 - d2^2`` is affine in (x, y), the result is a quadric.  The
returned quadrics keep this double-squaring scale; call ``.canonical()`` for
the reduced integer form.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import Interval2, ParamLine, Point, Sign, as_fraction, dist2
from .errors import DegeneratePlane, DegenerateDirectrix, NullDirectrix
from .quadric import AffineForm, ImplicitQuadric, add, square_parts, times


@dataclass(frozen=True)
class Circle:
    p: Point
    k2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "k2", as_fraction(self.k2))


@dataclass(frozen=True)
class _TwoFocus:
    p: Point
    q: Point
    k2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "k2", as_fraction(self.k2))
        if self.p == self.q and self.k2 == 0:
            raise DegeneratePlane("p == q with k2 == 0 holds on the whole plane")


class Ellipse(_TwoFocus):
    pass


class Hyperbola(_TwoFocus):
    pass


@dataclass(frozen=True)
class Parabola:
    p: Point
    line: ParamLine

    def __post_init__(self):
        if self.line.a == 0 and self.line.c == 0:
            raise DegenerateDirectrix("directrix direction is zero")
        if self.line.norm2 == 0:
            raise NullDirectrix(f"a^2 == c^2 for directrix {self.line}")


ConicSpec = Union[Circle, Ellipse, Hyperbola, Parabola]


def _dist2_parts(p: Point) -> tuple[Fraction, ...]:
    """Coefficients of ``(x - p1)^2 - (y - p2)^2``."""
    return (Fraction(1), Fraction(0), Fraction(-1),
            -2 * p.x, 2 * p.y, p.x * p.x - p.y * p.y)


def focal_difference(p: Point, q: Point) -> AffineForm:
    """``dist2(., p) - dist2(., q)``, which is affine."""
    diff = add(_dist2_parts(p), times(-1, _dist2_parts(q)))
    assert diff[:3] == (0, 0, 0)
    return AffineForm(diff[3], diff[4], diff[5])


def _double_squared(p: Point, q: Point, k2) -> ImplicitQuadric:
    k2 = as_fraction(k2)
    if p == q and k2 == 0:
        raise DegeneratePlane("p == q with k2 == 0 holds on the whole plane")
    focal_sum = add(_dist2_parts(p), _dist2_parts(q))
    parts = add(
        (0, 0, 0, 0, 0, k2 * k2),
        times(-2 * k2, focal_sum),
        square_parts(focal_difference(p, q)),
    )
    return ImplicitQuadric(*parts)


def ellipse_implicit(p: Point, q: Point, k2) -> ImplicitQuadric:
    return _double_squared(p, q, k2)


def hyperbola_implicit(p: Point, q: Point, k2) -> ImplicitQuadric:
    # d1 - d2 = k squares twice into the same polynomial as d1 + d2 = k
    return _double_squared(p, q, k2)


def parabola_implicit(p: Point, line: ParamLine) -> ImplicitQuadric:
    """``(a^2 - c^2) * dist2(x, p) + w^2 = 0`` with ``w = c x - a y + a d - b c``.

    This is ``dist2(x, p) == dist2_point_line(x, line)`` with the denominator
    cleared, using ``dist2_point_line = -w^2 / (a^2 - c^2)``.
    """
    if line.a == 0 and line.c == 0:
        raise DegenerateDirectrix("directrix direction is zero")
    den = line.norm2
    if den == 0:
        raise NullDirectrix(f"a^2 == c^2 for directrix {line}")
    a, b, c, d = line.a, line.b, line.c, line.d
    w = AffineForm(c, -a, a * d - b * c)
    return ImplicitQuadric(*add(times(den, _dist2_parts(p)), square_parts(w)))


def circle_implicit(p: Point, k2) -> ImplicitQuadric:
    k2 = as_fraction(k2)
    return ImplicitQuadric(*add(_dist2_parts(p), (0, 0, 0, 0, 0, -k2)))


def implicit(spec: ConicSpec) -> ImplicitQuadric:
    if isinstance(spec, Circle):
        return circle_implicit(spec.p, spec.k2)
    if isinstance(spec, Ellipse):
        return ellipse_implicit(spec.p, spec.q, spec.k2)
    if isinstance(spec, Hyperbola):
        return hyperbola_implicit(spec.p, spec.q, spec.k2)
    if isinstance(spec, Parabola):
        return parabola_implicit(spec.p, spec.line)
    raise TypeError(f"not a conic spec: {spec!r}")


class Branch(enum.Enum):
    ON_ELLIPSE_BRANCH = "on-ellipse-branch"
    ON_HYPERBOLA_BRANCH = "on-hyperbola-branch"
    ON_BOTH = "on-both"
    SIGN_INCONSISTENT = "sign-inconsistent"
    NOT_ON_CONIC = "not-on-conic"

    @property
    def on_conic(self) -> bool:
        return self in (Branch.ON_ELLIPSE_BRANCH, Branch.ON_HYPERBOLA_BRANCH, Branch.ON_BOTH)


@dataclass(frozen=True)
class MembershipVerdict:
    d1_sq: Interval2
    d2_sq: Interval2
    branch: Branch


def common_sign(*values) -> Sign | None:
    """Shared sign of the nonzero values; ZERO if all vanish, None on conflict."""
    signs = {Sign.of(v) for v in values} - {Sign.ZERO}
    if not signs:
        return Sign.ZERO
    if len(signs) > 1:
        return None
    return signs.pop()


def default_tolerance(k2) -> float:
    return 1e-9 * (1.0 + math.sqrt(abs(float(k2))))


def classify_membership(x: Point, spec: Ellipse | Hyperbola, eps: float | None = None) -> MembershipVerdict:
    """Decide which of ``r1 + r2 = kappa`` / ``|r1 - r2| = kappa`` the point satisfies.

    ``r1, r2, kappa`` are square roots of ``s*d1^2, s*d2^2, s*k^2`` where ``s`` is
    the shared nonzero sign.  The exact test always runs; ``eps > 0`` adds a
    floating tolerance on top.  ``eps=None`` means ``1e-9 * (1 + kappa)``.
    """
    if not isinstance(spec, (Ellipse, Hyperbola)):
        raise TypeError("membership classification needs an ellipse or hyperbola")
    d1 = dist2(x, spec.p)
    d2 = dist2(x, spec.q)
    k2 = spec.k2
    s = common_sign(d1.value, d2.value, k2)
    if s is None:
        return MembershipVerdict(d1, d2, Branch.SIGN_INCONSISTENT)
    if s is Sign.ZERO:
        return MembershipVerdict(d1, d2, Branch.ON_BOTH)
    sv = s.value
    a, b, c = sv * d1.value, sv * d2.value, sv * k2

    gap_e = c - a - b
    on_e = gap_e >= 0 and 4 * a * b == gap_e * gap_e
    gap_h = a + b - c
    on_h = gap_h >= 0 and 4 * a * b == gap_h * gap_h

    if eps is None:
        eps = default_tolerance(k2)
    if eps > 0 and not (on_e and on_h):
        r1, r2, kappa = math.sqrt(a), math.sqrt(b), math.sqrt(c)
        on_e = on_e or abs(r1 + r2 - kappa) <= eps
        on_h = on_h or abs(abs(r1 - r2) - kappa) <= eps

    if on_e and on_h:
        branch = Branch.ON_BOTH
    elif on_e:
        branch = Branch.ON_ELLIPSE_BRANCH
    elif on_h:
        branch = Branch.ON_HYPERBOLA_BRANCH
    else:
        branch = Branch.NOT_ON_CONIC
    return MembershipVerdict(d1, d2, branch)


def branch_residual(x: tuple[float, float], p: tuple[float, float], q: tuple[float, float], k2: float) -> float:
    """``min(|r1 + r2 - kappa|, ||r1 - r2| - kappa|)`` using magnitudes of the squares."""
    d1 = (x[0] - p[0]) ** 2 - (x[1] - p[1]) ** 2
    d2 = (x[0] - q[0]) ** 2 - (x[1] - q[1]) ** 2
    r1, r2, kappa = math.sqrt(abs(d1)), math.sqrt(abs(d2)), math.sqrt(abs(k2))
    return min(abs(r1 + r2 - kappa), abs(abs(r1 - r2) - kappa))

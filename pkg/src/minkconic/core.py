"""Exact primitives of the Minkowski plane.

The plane carries the indefinite form ``g(u, v) = u.x*v.x - u.y*v.y``.
Everything here works on :class:`fractions.Fraction`; floats only appear in
:func:`boost`, which takes a real rapidity.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DegenerateDirectrix, NullDirectrix


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings and "num/den" strings exactly.

    Floats are rejected: a binary float has no business in an exact path.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value) -> "Sign":
        return cls((value > 0) - (value < 0))


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_fraction(self.x))
        object.__setattr__(self, "y", as_fraction(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __iter__(self):
        yield self.x
        yield self.y

    def as_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True)
class ParamLine:
    """The line ``t -> (a*t + b, c*t + d)``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.a == 0 and self.c == 0:
            raise DegenerateDirectrix(f"direction (a, c) = (0, 0) in {self}")

    def __str__(self):
        return "(" + ", ".join(str(v) for v in (self.a, self.b, self.c, self.d)) + ")"

    def at(self, t) -> Point:
        t = as_fraction(t)
        return Point(self.a * t + self.b, self.c * t + self.d)

    @property
    def norm2(self) -> Fraction:
        """Squared Minkowski length of the direction vector."""
        return self.a * self.a - self.c * self.c


@dataclass(frozen=True)
class Interval2:
    """A squared Minkowski distance together with its causal sign."""

    value: Fraction
    sign: Sign = None

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))
        computed = Sign.of(self.value)
        if self.sign is None:
            object.__setattr__(self, "sign", computed)
        elif self.sign is not computed:
            raise ValueError(f"sign {self.sign} inconsistent with value {self.value}")

    @property
    def causal(self) -> str:
        return {Sign.POSITIVE: "spacelike", Sign.ZERO: "null",
                Sign.NEGATIVE: "timelike"}[self.sign]


def metric(u: Point, v: Point) -> Fraction:
    return u.x * v.x - u.y * v.y


def dist2(x: Point, p: Point) -> Interval2:
    dx = x.x - p.x
    dy = x.y - p.y
    return Interval2(dx * dx - dy * dy)


def _require_nonnull(line: ParamLine) -> Fraction:
    den = line.norm2
    if den == 0:
        raise NullDirectrix(f"a^2 == c^2 for directrix {line}")
    return den


def foot_param(x: Point, line: ParamLine) -> Fraction:
    """Critical parameter of ``t -> dist2(x, line(t))``.

    For a timelike direction this critical point is a maximum; it is still the
    one used, no min/max switching.
    """
    den = _require_nonnull(line)
    a, b, c, d = line.a, line.b, line.c, line.d
    return (a * x.x - c * x.y - a * b + c * d) / den


def foot_point(x: Point, line: ParamLine) -> Point:
    den = _require_nonnull(line)
    a, b, c, d = line.a, line.b, line.c, line.d
    fx = (a * a * x.x - a * c * x.y + a * c * d - c * c * b) / den
    fy = (a * c * x.x - c * c * x.y - a * b * c + a * a * d) / den
    return Point(fx, fy)


def foot_residual(x: Point, line: ParamLine) -> Fraction:
    """``c*x - a*y + a*d - b*c``; vanishes exactly when ``x`` is on the line."""
    return line.c * x.x - line.a * x.y + line.a * line.d - line.b * line.c


def dist2_point_line(x: Point, line: ParamLine) -> Interval2:
    return dist2(x, foot_point(x, line))


def boost(x: tuple[float, float] | Point, phi: float) -> tuple[float, float]:
    """Hyperbolic rotation by rapidity ``phi`` in floating point."""
    px, py = (float(x[0]), float(x[1])) if not isinstance(x, Point) else x.as_float()
    ch, sh = math.cosh(phi), math.sinh(phi)
    return (px * ch + py * sh, px * sh + py * ch)


def rational_boost_pair(t) -> tuple[Fraction, Fraction]:
    """Exact (cosh, sinh) pair from a rational parameter ``t != 0``.

    ``((1 + t^2) / 2t, (t^2 - 1) / 2t)`` satisfies ``lam^2 - mu^2 == 1``.
    """
    t = as_fraction(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    return (1 + t * t) / (2 * t), (t * t - 1) / (2 * t)


def boost_exact(x: Point, lam, mu) -> Point:
    lam, mu = as_fraction(lam), as_fraction(mu)
    if lam * lam - mu * mu != 1:
        raise ValueError("boost pair must satisfy lam^2 - mu^2 == 1")
    return Point(lam * x.x + mu * x.y, mu * x.x + lam * x.y)


def boost_line(line: ParamLine, lam, mu) -> ParamLine:
    lam, mu = as_fraction(lam), as_fraction(mu)
    a, b, c, d = line.a, line.b, line.c, line.d
    return ParamLine(lam * a + mu * c, lam * b + mu * d, mu * a + lam * c, mu * b + lam * d)


def translate_line(line: ParamLine, v: Point) -> ParamLine:
    return ParamLine(line.a, line.b + v.x, line.c, line.d + v.y)

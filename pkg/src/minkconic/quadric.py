"""Degree-two bivariate polynomials with exact rational coefficients."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import reduce

from .core import Point, as_fraction
from .errors import DegeneratePlane

COEFF_NAMES = ("A", "B", "C", "D", "E", "F")


@dataclass(frozen=True)
class AffineForm:
    """``cx*x + cy*y + c0``."""

    cx: Fraction
    cy: Fraction
    c0: Fraction

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, as_fraction(getattr(self, f.name)))

    def __call__(self, pt: Point) -> Fraction:
        return self.cx * pt.x + self.cy * pt.y + self.c0

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(self.cx + other.cx, self.cy + other.cy, self.c0 + other.c0)

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(self.cx - other.cx, self.cy - other.cy, self.c0 - other.c0)

    def scale(self, lam) -> "AffineForm":
        lam = as_fraction(lam)
        return AffineForm(lam * self.cx, lam * self.cy, lam * self.c0)


@dataclass(frozen=True)
class ImplicitQuadric:
    """``A x^2 + B xy + C y^2 + D x + E y + F = 0``.

    The all-zero polynomial is rejected; use :meth:`raw` for intermediate sums
    that may legitimately cancel.
    """

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    F: Fraction

    def __post_init__(self):
        for name in COEFF_NAMES:
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not any(self.coeffs):
            raise DegeneratePlane("all six coefficients are zero")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def __call__(self, pt: Point) -> Fraction:
        return evaluate(self, pt)

    def scale(self, lam) -> "ImplicitQuadric":
        lam = as_fraction(lam)
        if lam == 0:
            raise ValueError("scale factor must be nonzero")
        return ImplicitQuadric(*(lam * c for c in self.coeffs))

    def canonical(self) -> "ImplicitQuadric":
        """Primitive integer form with the first nonzero coefficient positive."""
        cs = self.coeffs
        den = reduce(math.lcm, (c.denominator for c in cs), 1)
        ints = [int(c * den) for c in cs]
        g = reduce(math.gcd, ints, 0)
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            g = -g
        return ImplicitQuadric(*(Fraction(v, g) for v in ints))

    def to_floats(self, normalize: bool = True) -> tuple[float, ...]:
        """Float coefficients, divided by the largest magnitude when ``normalize``."""
        cs = self.coeffs
        if normalize:
            m = max(abs(c) for c in cs)
            cs = tuple(c / m for c in cs)
        return tuple(float(c) for c in cs)

    def render(self) -> str:
        return render(self)


def quadric_from_parts(A=0, B=0, C=0, D=0, E=0, F=0) -> tuple[Fraction, ...]:
    """Coefficient tuple that is allowed to be all zero."""
    return tuple(as_fraction(v) for v in (A, B, C, D, E, F))


def evaluate(q: ImplicitQuadric, pt: Point) -> Fraction:
    x, y = pt.x, pt.y
    return q.A * x * x + q.B * x * y + q.C * y * y + q.D * x + q.E * y + q.F


def evaluate_float(coeffs, x: float, y: float) -> float:
    A, B, C, D, E, F = coeffs
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def square_parts(form: AffineForm) -> tuple[Fraction, ...]:
    u, v, w = form.cx, form.cy, form.c0
    return (u * u, 2 * u * v, v * v, 2 * u * w, 2 * v * w, w * w)


def square_affine(form: AffineForm) -> ImplicitQuadric:
    return ImplicitQuadric(*square_parts(form))


def add(*parts) -> tuple[Fraction, ...]:
    return tuple(sum(cs, Fraction(0)) for cs in zip(*parts))


def times(lam, part) -> tuple[Fraction, ...]:
    lam = as_fraction(lam)
    return tuple(lam * c for c in part)


def scalar_equivalent(q1: ImplicitQuadric, q2: ImplicitQuadric) -> bool:
    """True iff ``q1 == lam * q2`` for some nonzero rational ``lam``."""
    lam = None
    for c1, c2 in zip(q1.coeffs, q2.coeffs):
        if (c1 == 0) != (c2 == 0):
            return False
        if c1 == 0:
            continue
        ratio = c1 / c2
        if lam is None:
            lam = ratio
        elif ratio != lam:
            return False
    return True


def format_rational(value: Fraction) -> str:
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render(q: ImplicitQuadric) -> str:
    """Human-readable form, e.g. ``x^2 - 4*x*y + 4*y^2 + 12*x - 18*y + 15 = 0``."""
    monomials = ("x^2", "x*y", "y^2", "x", "y", "")
    terms = []
    for coeff, mono in zip(q.coeffs, monomials):
        if coeff == 0:
            continue
        mag = abs(coeff)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not terms:
            terms.append(body if coeff > 0 else f"-{body}")
        else:
            terms.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(terms) + " = 0"

"""Euclidean reading of an implicit quadric: type and conic completeness."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .quadric import ImplicitQuadric


class Kind(enum.Enum):
    REAL_ELLIPSE = "ellipse"
    IMAGINARY_ELLIPSE = "imaginary-ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    INTERSECTING_LINES = "intersecting-lines"
    PARALLEL_LINES = "parallel-lines"
    COINCIDENT_LINES = "coincident-lines"
    POINT = "point"
    EMPTY_PARALLEL = "empty-parallel"
    # first-degree and constant polynomials, reachable only from raw input
    LINE = "line"
    EMPTY = "empty"


class Completeness(enum.Enum):
    COMPLETE = "complete"
    INCOMPLETE = "incomplete"
    EMPTY = "empty"


@dataclass(frozen=True)
class EuclideanClass:
    kind: Kind
    delta: Fraction
    det3: Fraction

    @property
    def delta_family(self) -> str:
        """Coarse type read off the sign of ``delta`` alone."""
        if self.delta < 0:
            return "ellipse"
        if self.delta == 0:
            return "parabola"
        return "hyperbola"


@dataclass(frozen=True)
class CompletenessVerdict:
    value: Completeness
    components: int

    @property
    def rationale(self) -> str:
        return f"real locus has {self.components} connected component(s)"


_COMPONENTS = {
    Kind.REAL_ELLIPSE: 1,
    Kind.PARABOLA: 1,
    Kind.INTERSECTING_LINES: 1,
    Kind.COINCIDENT_LINES: 1,
    Kind.POINT: 1,
    Kind.LINE: 1,
    Kind.HYPERBOLA: 2,
    Kind.PARALLEL_LINES: 2,
    Kind.IMAGINARY_ELLIPSE: 0,
    Kind.EMPTY_PARALLEL: 0,
    Kind.EMPTY: 0,
}


def discriminant(q: ImplicitQuadric) -> Fraction:
    return q.B * q.B - 4 * q.A * q.C


def det3(q: ImplicitQuadric) -> Fraction:
    """Determinant of the symmetric 3x3 matrix of the quadric."""
    a, h, b = q.A, q.B / 2, q.C
    g, f, c = q.D / 2, q.E / 2, q.F
    return a * (b * c - f * f) - h * (h * c - f * g) + g * (h * f - b * g)


def classify(q: ImplicitQuadric) -> EuclideanClass:
    delta = discriminant(q)
    det = det3(q)
    if q.A == 0 and q.B == 0 and q.C == 0:
        kind = Kind.LINE if (q.D != 0 or q.E != 0) else Kind.EMPTY
    elif det != 0:
        if delta < 0:
            # real iff trace and det3 have opposite signs
            kind = Kind.REAL_ELLIPSE if (q.A + q.C) * det < 0 else Kind.IMAGINARY_ELLIPSE
        elif delta == 0:
            kind = Kind.PARABOLA
        else:
            kind = Kind.HYPERBOLA
    elif delta > 0:
        kind = Kind.INTERSECTING_LINES
    elif delta < 0:
        kind = Kind.POINT
    else:
        minors = (q.A * q.F - q.D * q.D / 4) + (q.C * q.F - q.E * q.E / 4)
        if minors < 0:
            kind = Kind.PARALLEL_LINES
        elif minors == 0:
            kind = Kind.COINCIDENT_LINES
        else:
            kind = Kind.EMPTY_PARALLEL
    return EuclideanClass(kind, delta, det)


def completeness(cls: EuclideanClass) -> CompletenessVerdict:
    n = _COMPONENTS[cls.kind]
    if n == 0:
        value = Completeness.EMPTY
    elif n == 1:
        value = Completeness.COMPLETE
    else:
        value = Completeness.INCOMPLETE
    return CompletenessVerdict(value, n)

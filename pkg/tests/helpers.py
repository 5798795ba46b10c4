"""Seeded generators and independent oracles shared by the test modules."""
import math
import random
from fractions import Fraction

import sympy as sp

from minkconic.core import ParamLine, Point, rational_boost_pair
from minkconic.synth import Circle, Ellipse, Hyperbola, Parabola


def rand_rational(rng: random.Random, lo=-6, hi=6, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo * max_den, hi * max_den), rng.randint(1, max_den))


def rand_point(rng, **kw) -> Point:
    return Point(rand_rational(rng, **kw), rand_rational(rng, **kw))


def rand_line(rng) -> ParamLine:
    while True:
        a, c = rand_rational(rng, -3, 3), rand_rational(rng, -3, 3)
        if a * a != c * c:
            return ParamLine(a, rand_rational(rng), c, rand_rational(rng))


def rand_focal_spec(rng, cls=None):
    cls = cls or rng.choice((Ellipse, Hyperbola))
    while True:
        p, q = rand_point(rng), rand_point(rng)
        k2 = rand_rational(rng, -20, 20)
        if not (p == q and k2 == 0):
            return cls(p, q, k2)


def rand_parabola(rng) -> Parabola:
    return Parabola(rand_point(rng), rand_line(rng))


def rand_boost(rng):
    t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    if rng.random() < 0.5:
        t = -t
    return rational_boost_pair(t)


# -- symbolic oracle (sympy), independent of minkconic.quadric ----------------

X, Y = sp.symbols("x y")


def _sq(px, py):
    return (X - px) ** 2 - (Y - py) ** 2


def sympy_coeffs(expr):
    poly = sp.Poly(sp.expand(expr), X, Y)
    mono = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    return tuple(Fraction(str(poly.coeff_monomial(X ** i * Y ** j))) for i, j in mono)


def sympy_double_squared(p, q, k2):
    """Eliminate roots from r1 + r2 = k by explicit squaring in sympy."""
    d1 = _sq(sp.Rational(str(p.x)), sp.Rational(str(p.y)))
    d2 = _sq(sp.Rational(str(q.x)), sp.Rational(str(q.y)))
    k2 = sp.Rational(str(k2))
    # r1 + r2 = k  ->  d1 + d2 + 2 r1 r2 = k2  ->  4 d1 d2 = (k2 - d1 - d2)^2
    return sympy_coeffs((k2 - d1 - d2) ** 2 - 4 * d1 * d2)


def sympy_parabola(p, line):
    """dist2(x, p) - dist2(x, foot) with the denominator cleared, via sympy."""
    a, b, c, d = (sp.Rational(str(v)) for v in (line.a, line.b, line.c, line.d))
    t = sp.Symbol("t")
    g = (X - a * t - b) ** 2 - (Y - c * t - d) ** 2
    t0 = sp.solve(sp.diff(g, t), t)[0]
    expr = _sq(sp.Rational(str(p.x)), sp.Rational(str(p.y))) - g.subs(t, t0)
    return sympy_coeffs(sp.together(expr * (a * a - c * c)))


def sympy_det3(coeffs):
    A, B, C, D, E, F = (sp.Rational(str(v)) for v in coeffs)
    M = sp.Matrix([[A, B / 2, D / 2], [B / 2, C, E / 2], [D / 2, E / 2, F]])
    return Fraction(str(M.det()))


# -- numeric oracles ------------------------------------------------------------

def scan_critical_t(x, line, lo=-50.0, hi=50.0, steps=200001):
    """Critical point of t -> dist2(x, line(t)) by a dense scan of the derivative."""
    xf, yf = float(x.x), float(x.y)
    a, b, c, d = (float(v) for v in (line.a, line.b, line.c, line.d))

    def deriv(t):
        return -2 * a * (xf - a * t - b) + 2 * c * (yf - c * t - d)

    prev_t, prev = lo, deriv(lo)
    h = (hi - lo) / (steps - 1)
    for i in range(1, steps):
        t = lo + i * h
        cur = deriv(t)
        if prev == 0:
            return prev_t
        if (prev > 0) != (cur > 0):
            # linear derivative, so interpolation is exact up to rounding
            return prev_t + h * prev / (prev - cur)
        prev_t, prev = t, cur
    raise AssertionError("no critical point in scan range")


def member_on_ray(f, origin, theta, lo, hi, iters=200):
    """Bisection of a scalar function along a ray; returns the point."""
    ux, uy = math.cos(theta), math.sin(theta)
    g = lambda t: f(origin[0] + t * ux, origin[1] + t * uy)
    glo = g(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    return origin[0] + t * ux, origin[1] + t * uy


def hyperbolic_vector(rng, r, timelike: bool) -> Point:
    """Exact vector with squared Minkowski length +r^2 (or -r^2 when timelike)."""
    lam, mu = rand_boost(rng)
    return Point(r * mu, r * lam) if timelike else Point(r * lam, r * mu)

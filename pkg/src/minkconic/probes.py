"""Member points found from the distance definitions alone.

Points are located by scanning rays cast from a focus and bisecting sign
changes of the defining equation.  Nothing here touches the expanded
polynomial, so the points can be used to check it.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor

from .synth import Circle, ConicSpec, Ellipse, Hyperbola, Parabola

SCAN_STEPS = 256
BISECT_TOL = 1e-12


def _d2(x, y, px, py):
    return (x - px) ** 2 - (y - py) ** 2


def _focal_functions(spec: Ellipse | Hyperbola):
    px, py = float(spec.p.x), float(spec.p.y)
    qx, qy = float(spec.q.x), float(spec.q.y)
    k2 = float(spec.k2)

    def branches(x, y):
        d1, d2 = _d2(x, y, px, py), _d2(x, y, qx, qy)
        signs = {(v > 0) - (v < 0) for v in (d1, d2, k2)} - {0}
        if len(signs) > 1:
            return None
        s = signs.pop() if signs else 1
        r1, r2 = math.sqrt(s * d1), math.sqrt(s * d2)
        if k2 == 0:
            # |r1 - r2| touches zero without crossing; use the signed form
            return (r1 + r2, s * (d1 - d2))
        kappa = math.sqrt(s * k2)
        return (r1 + r2 - kappa, abs(r1 - r2) - kappa)

    return branches


def _parabola_function(spec: Parabola):
    px, py = float(spec.p.x), float(spec.p.y)
    a, b, c, d = (float(v) for v in (spec.line.a, spec.line.b, spec.line.c, spec.line.d))
    den = a * a - c * c

    def residual(x, y):
        t0 = (a * x - c * y - a * b + c * d) / den
        return (_d2(x, y, px, py) - _d2(x, y, a * t0 + b, c * t0 + d),)

    return residual


def _circle_function(spec: Circle):
    px, py = float(spec.p.x), float(spec.p.y)
    k2 = float(spec.k2)
    return lambda x, y: (_d2(x, y, px, py) - k2,)


def defining_functions(spec: ConicSpec):
    """Vector of scalar functions whose zeros are the conic (None where undefined)."""
    if isinstance(spec, (Ellipse, Hyperbola)):
        return _focal_functions(spec)
    if isinstance(spec, Parabola):
        return _parabola_function(spec)
    if isinstance(spec, Circle):
        return _circle_function(spec)
    raise TypeError(f"not a conic spec: {spec!r}")


def _ray_length(spec: ConicSpec) -> float:
    if isinstance(spec, (Ellipse, Hyperbola)):
        sep = math.hypot(float(spec.q.x - spec.p.x), float(spec.q.y - spec.p.y))
        return 4.0 * (math.sqrt(abs(float(spec.k2))) + sep + 1.0)
    if isinstance(spec, Circle):
        return 4.0 * (math.sqrt(abs(float(spec.k2))) + 1.0)
    line = spec.line
    # distance scale from the focus to the directrix's base point
    gap = math.hypot(float(line.b - spec.p.x), float(line.d - spec.p.y))
    return 4.0 * (gap + 1.0)


def _bisect(f, idx, lo, hi, flo):
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        vals = f(mid)
        if vals is None:
            return None
        fm = vals[idx]
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def roots_on_ray(spec: ConicSpec, theta: float, length: float | None = None,
                 steps: int = SCAN_STEPS) -> list[tuple[float, float]]:
    """All bracketed zeros along the ray from the first focus at angle ``theta``."""
    funcs = defining_functions(spec)
    ox, oy = float(spec.p.x), float(spec.p.y)
    ux, uy = math.cos(theta), math.sin(theta)
    if length is None:
        length = _ray_length(spec)

    def f(t):
        return funcs(ox + t * ux, oy + t * uy)

    ts = [length * (i + 0.5) / steps for i in range(steps)]
    vals = [f(t) for t in ts]
    found = []
    for i in range(steps - 1):
        v0, v1 = vals[i], vals[i + 1]
        if v0 is None or v1 is None:
            continue
        for idx in range(len(v0)):
            a, b = v0[idx], v1[idx]
            if a == 0:
                t = ts[i]
            elif (a > 0) == (b > 0) or b == 0:
                continue
            else:
                t = _bisect(f, idx, ts[i], ts[i + 1], a)
                if t is None:
                    continue
            found.append((ox + t * ux, oy + t * uy))
    return found


def member_points(spec: ConicSpec, count: int, seed: int = 0, workers: int = 1,
                  max_rays: int | None = None) -> list[tuple[float, float]]:
    """Up to ``count`` member points from seeded random rays.

    Ray angles are drawn sequentially from ``random.Random(seed)`` before any
    work is farmed out, so the result does not depend on ``workers``.
    """
    rng = random.Random(seed)
    if max_rays is None:
        max_rays = 20 * count + 20
    length = _ray_length(spec)
    points: list[tuple[float, float]] = []
    batch = max(8, count)
    drawn = 0
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        while len(points) < count and drawn < max_rays:
            n = min(batch, max_rays - drawn)
            angles = [rng.uniform(0.0, 2.0 * math.pi) for _ in range(n)]
            drawn += n
            for found in pool.map(lambda th: roots_on_ray(spec, th, length), angles):
                points.extend(found)
    return points[:count]

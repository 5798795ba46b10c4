"""Real locus of an implicit quadric over a window, via marching squares.

The grid evaluation and cell classification run in a compiled extension when
it is importable and in ``_pykernels`` otherwise; ``BACKEND`` names the one
in use.  Both produce identical output.

Singular quadrics (line pairs, double lines, isolated points) have no sign
change along at least part of their locus, so marching squares cannot see
them; those are factored and clipped to the window instead.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..lens import Kind, classify
from ..quadric import ImplicitQuadric
from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on build
    _ckernels = None

KERNELS = {"python": _pykernels}
if _ckernels is not None:
    KERNELS["cython"] = _ckernels
BACKEND = "cython" if _ckernels is not None else "python"

DEFAULT_RESOLUTION = 512
AUTOFIT_HALF_WIDTH = 10.0
_SINGULAR = {Kind.INTERSECTING_LINES, Kind.PARALLEL_LINES, Kind.COINCIDENT_LINES,
             Kind.POINT, Kind.LINE}


class SamplerIOError(OSError):
    pass


@dataclass(frozen=True)
class Window:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    resolution: int = DEFAULT_RESOLUTION

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError(f"empty window {self!r}")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax


@dataclass
class SampledCurve:
    polylines: list[list[tuple[float, float]]]
    component_count: int
    residual_stats: float
    kind: Kind | None = None
    backend: str = BACKEND
    gradient_scaled_residual: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def vertices(self) -> list[tuple[float, float]]:
        return [v for line in self.polylines for v in line]


class UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def roots(self):
        return {self.find(a) for a in self.parent}


# -- geometry helpers ------------------------------------------------------

def _center(c) -> tuple[float, float] | None:
    A, B, C, D, E, _ = c
    det = 4 * A * C - B * B
    if det == 0:
        return None
    return ((B * E - 2 * C * D) / det, (B * D - 2 * A * E) / det)


def _rank_one_axis(c):
    """Unit vector spanning a rank-one quadratic part and its eigenvalue."""
    A, B, C = c[:3]
    m = (A, B / 2) if abs(A) >= abs(C) else (B / 2, C)
    norm = math.hypot(*m)
    m = (m[0] / norm, m[1] / norm)
    return m, A + C


def _parabola_vertex(c) -> tuple[float, float]:
    A, B, C, D, E, F = c
    m, mu = _rank_one_axis(c)
    n = (-m[1], m[0])
    gm = D * m[0] + E * m[1]
    gn = D * n[0] + E * n[1]
    alpha = -gm / (2 * mu)
    beta = -(mu * alpha * alpha + gm * alpha + F) / gn
    return (alpha * m[0] + beta * n[0], alpha * m[1] + beta * n[1])


def _real_lines(q: ImplicitQuadric, kind: Kind) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Lines (point, direction) making up a singular quadric's real locus."""
    c = q.to_floats()
    A, B, C, D, E, F = c
    if kind is Kind.LINE:
        nn = D * D + E * E
        return [((-F * D / nn, -F * E / nn), (-E, D))]
    if kind is Kind.INTERSECTING_LINES:
        base = _center(c)
        disc = math.sqrt(B * B - 4 * A * C)
        if A == 0 and C == 0:
            dirs = [(1.0, 0.0), (0.0, 1.0)]
        elif abs(A) >= abs(C):
            dirs = [((-B + disc) / (2 * A), 1.0), ((-B - disc) / (2 * A), 1.0)]
        else:
            dirs = [(1.0, (-B + disc) / (2 * C)), (1.0, (-B - disc) / (2 * C))]
        return [(base, d) for d in dirs]
    # parallel or coincident: mu*s^2 + gm*s + F = 0 in s = m.x
    m, mu = _rank_one_axis(c)
    gm = D * m[0] + E * m[1]
    direction = (-m[1], m[0])
    if kind is Kind.COINCIDENT_LINES:
        roots = [-gm / (2 * mu)]
    else:
        root = math.sqrt(max(gm * gm - 4 * mu * F, 0.0))
        roots = [(-gm - root) / (2 * mu), (-gm + root) / (2 * mu)]
    return [((s * m[0], s * m[1]), direction) for s in roots]


def autofit_window(q: ImplicitQuadric, resolution: int = DEFAULT_RESOLUTION,
                   half_width: float = AUTOFIT_HALF_WIDTH) -> Window:
    """Window centred on the quadric's centre, parabola vertex, or nearest line point."""
    kind = classify(q).kind
    c = q.to_floats()
    center = None
    if kind is Kind.PARABOLA:
        center = _parabola_vertex(c)
    elif kind in (Kind.PARALLEL_LINES, Kind.COINCIDENT_LINES, Kind.LINE):
        lines = _real_lines(q, kind)
        center = (sum(p[0] for p, _ in lines) / len(lines), sum(p[1] for p, _ in lines) / len(lines))
    elif kind not in (Kind.EMPTY, Kind.EMPTY_PARALLEL):
        center = _center(c)
    if center is None:
        center = (0.0, 0.0)
    cx, cy = center
    return Window(cx - half_width, cx + half_width, cy - half_width, cy + half_width, resolution)


def clip_line(point, direction, w: Window):
    """Liang-Barsky clip of an infinite line to the window; None if it misses."""
    (px, py), (dx, dy) = point, direction
    lo, hi = -math.inf, math.inf
    for p0, d, a, b in ((px, dx, w.xmin, w.xmax), (py, dy, w.ymin, w.ymax)):
        if d == 0:
            if not (a <= p0 <= b):
                return None
            continue
        t1, t2 = (a - p0) / d, (b - p0) / d
        if t1 > t2:
            t1, t2 = t2, t1
        lo, hi = max(lo, t1), min(hi, t2)
    if lo > hi:
        return None
    return (px + lo * dx, py + lo * dy), (px + hi * dx, py + hi * dy)


def _segments_touch(s1, s2, eps=1e-9) -> bool:
    (ax, ay), (bx, by) = s1
    (cx, cy), (dx, dy) = s2
    rx, ry, sx, sy = bx - ax, by - ay, dx - cx, dy - cy
    denom = rx * sy - ry * sx
    if denom == 0:
        return False
    t = ((cx - ax) * sy - (cy - ay) * sx) / denom
    u = ((cx - ax) * ry - (cy - ay) * rx) / denom
    return -eps <= t <= 1 + eps and -eps <= u <= 1 + eps


# -- evaluation helpers ----------------------------------------------------

def _eval_array(c, x, y):
    A, B, C, D, E, F = c
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def _grad_array(c, x, y):
    A, B, C, D, E, _ = c
    return 2 * A * x + B * y + D, B * x + 2 * C * y + E


def _residuals(c, pts: np.ndarray) -> tuple[float, float]:
    if len(pts) == 0:
        return 0.0, 0.0
    x, y = pts[:, 0], pts[:, 1]
    val = np.abs(_eval_array(c, x, y))
    gx, gy = _grad_array(c, x, y)
    scaled = val / (1.0 + np.hypot(gx, gy))
    return float(val.max()), float(scaled.max())


def _newton_step(c, pts: np.ndarray) -> np.ndarray:
    x, y = pts[:, 0], pts[:, 1]
    f = _eval_array(c, x, y)
    gx, gy = _grad_array(c, x, y)
    g2 = gx * gx + gy * gy
    safe = np.where(g2 > 0, g2, 1.0)
    step = np.where(g2 > 0, f / safe, 0.0)
    return np.column_stack((x - step * gx, y - step * gy))


def _chunks(n: int, workers: int):
    workers = max(1, min(workers, n))
    bounds = [n * k // workers for k in range(workers + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(workers) if bounds[k] < bounds[k + 1]]


def _edge_points(edges: np.ndarray, xs, ys, values) -> np.ndarray:
    nxp = len(xs)
    cell = edges // 2
    vertical = (edges % 2).astype(bool)
    i = cell % nxp
    j = cell // nxp
    i1 = np.where(vertical, i, i + 1)
    j1 = np.where(vertical, j + 1, j)
    v0 = values[j, i]
    v1 = values[j1, i1]
    t = v0 / (v0 - v1)
    x0, y0 = xs[i], ys[j]
    x1, y1 = xs[i1], ys[j1]
    return np.column_stack((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))


def _assemble(segs: np.ndarray):
    """Chain segments into polylines and count components with union-find."""
    adj: dict[int, list[int]] = {}
    uf = UnionFind()
    for a, b in segs.tolist():
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
        uf.add(a)
        uf.add(b)
        uf.union(a, b)
    seen: set[int] = set()
    chains = []

    def walk(start):
        chain = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [n for n in adj[cur] if n != prev and n not in seen]
            if not nxt:
                if prev is not None and start in adj[cur] and len(chain) > 2:
                    chain.append(start)
                return chain
            prev, cur = cur, nxt[0]
            seen.add(cur)
            chain.append(cur)

    nodes = sorted(adj)
    for node in nodes:
        if node not in seen and len(adj[node]) == 1:
            chains.append(walk(node))
    for node in nodes:
        if node not in seen:
            chains.append(walk(node))
    return chains, len(uf.roots())


def _march(q: ImplicitQuadric, w: Window, workers: int, backend: str) -> SampledCurve:
    kern = KERNELS[backend]
    c = q.to_floats()
    n = w.resolution
    xs = np.array([w.xmin + (w.xmax - w.xmin) * i / n for i in range(n + 1)])
    ys = np.array([w.ymin + (w.ymax - w.ymin) * j / n for j in range(n + 1)])
    values = np.empty((n + 1, n + 1))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        list(pool.map(lambda r: kern.eval_rows(c, xs, ys, values, *r), _chunks(n + 1, workers)))
        parts = list(pool.map(lambda r: kern.march_rows(c, xs, ys, values, *r), _chunks(n, workers)))
    segs = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    if len(segs) == 0:
        return SampledCurve([], 0, 0.0, backend=backend)
    chains, count = _assemble(segs)
    edge_ids = np.unique(segs)
    pts = _newton_step(c, _edge_points(edge_ids, xs, ys, values))
    lookup = {int(e): k for k, e in enumerate(edge_ids.tolist())}
    polylines = [[(float(pts[lookup[e], 0]), float(pts[lookup[e], 1])) for e in chain]
                 for chain in chains]
    raw, scaled = _residuals(c, pts)
    return SampledCurve(polylines, count, raw, backend=backend, gradient_scaled_residual=scaled)


def _singular(q: ImplicitQuadric, kind: Kind, w: Window) -> SampledCurve:
    c = q.to_floats()
    if kind is Kind.POINT:
        cx, cy = _center(c)
        polylines = [[(cx, cy)]] if w.contains(cx, cy) else []
        pts = np.array(polylines[0]) if polylines else np.empty((0, 2))
        raw, scaled = _residuals(c, pts)
        return SampledCurve(polylines, len(polylines), raw, gradient_scaled_residual=scaled)
    pieces = []
    for point, direction in _real_lines(q, kind):
        clipped = clip_line(point, direction, w)
        if clipped is not None:
            pieces.append(clipped)
    uf = UnionFind()
    for k in range(len(pieces)):
        uf.add(k)
        for m in range(k):
            if _segments_touch(pieces[k], pieces[m]):
                uf.union(k, m)
    polylines = [list(p) for p in pieces]
    pts = np.array([v for p in polylines for v in p]) if polylines else np.empty((0, 2))
    raw, scaled = _residuals(c, pts)
    return SampledCurve(polylines, len(uf.roots()), raw, gradient_scaled_residual=scaled)


def sample(q: ImplicitQuadric, w: Window | None = None, workers: int = 1,
           backend: str | None = None) -> SampledCurve:
    """Polylines of ``q = 0`` inside ``w`` (auto-fitted when omitted).

    An empty locus is not an error: it comes back with ``component_count == 0``.
    """
    if w is None:
        w = autofit_window(q)
    backend = backend or BACKEND
    if backend not in KERNELS:
        raise ValueError(f"backend {backend!r} unavailable; have {sorted(KERNELS)}")
    kind = classify(q).kind
    if kind in _SINGULAR:
        curve = _singular(q, kind, w)
        curve.backend = backend
    else:
        curve = _march(q, w, workers, backend)
    curve.kind = kind
    return curve


# -- output ----------------------------------------------------------------

def _g17(v: float) -> str:
    return f"{v:.17g}"


def csv_text(curve: SampledCurve) -> str:
    rows = ["polyline_id,x,y"]
    for pid, line in enumerate(curve.polylines):
        rows.extend(f"{pid},{_g17(x)},{_g17(y)}" for x, y in line)
    return "\n".join(rows) + "\n"


def _write(path, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise SamplerIOError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def emit_csv(curve: SampledCurve, path) -> None:
    _write(path, csv_text(curve))


def _n(v: float) -> str:
    return f"{v:.10g}"


def svg_text(curve: SampledCurve, w: Window, foci=(), directrix=None) -> str:
    """SVG document; y is flipped so that the plot reads with y pointing up.

    ``directrix`` is a ``(point, direction)`` pair of float tuples.
    """
    stroke = 0.005 * w.width
    height = w.ymax - w.ymin
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_n(w.xmin)} {_n(-w.ymax)} '
        f'{_n(w.width)} {_n(height)}" width="600" height="{_n(600 * height / w.width)}">',
        f'<rect x="{_n(w.xmin)}" y="{_n(-w.ymax)}" width="{_n(w.width)}" '
        f'height="{_n(height)}" fill="white"/>',
    ]
    if directrix is not None:
        clipped = clip_line(directrix[0], directrix[1], w)
        if clipped is not None:
            (x0, y0), (x1, y1) = clipped
            out.append(f'<line class="directrix" x1="{_n(x0)}" y1="{_n(-y0)}" x2="{_n(x1)}" '
                       f'y2="{_n(-y1)}" stroke="gray" stroke-width="{_n(stroke)}" '
                       f'stroke-dasharray="{_n(4 * stroke)} {_n(2 * stroke)}"/>')
    for line in curve.polylines:
        if len(line) == 1:
            x, y = line[0]
            out.append(f'<circle class="locus-point" cx="{_n(x)}" cy="{_n(-y)}" '
                       f'r="{_n(stroke)}" fill="black"/>')
            continue
        d = " ".join(f"{'M' if k == 0 else 'L'}{_n(x)},{_n(-y)}" for k, (x, y) in enumerate(line))
        out.append(f'<path d="{d}" fill="none" stroke="black" stroke-width="{_n(stroke)}"/>')
    for fx, fy in foci:
        out.append(f'<circle class="focus" cx="{_n(fx)}" cy="{_n(-fy)}" r="{_n(2 * stroke)}" fill="red"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(curve: SampledCurve, w: Window, path, foci=(), directrix=None) -> None:
    _write(path, svg_text(curve, w, foci, directrix))

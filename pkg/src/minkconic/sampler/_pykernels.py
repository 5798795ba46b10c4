"""Pure-Python grid kernels, used when the compiled extension is unavailable.

Arithmetic is written in the same order as ``_ckernels.pyx`` so both backends
produce bit-identical grids and segment lists.
"""
import numpy as np


def _quad(A, B, C, D, E, F, x, y):
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def eval_rows(coeffs, xs, ys, out, j0, j1):
    A, B, C, D, E, F = coeffs
    xl = xs.tolist()
    for j in range(j0, j1):
        y = float(ys[j])
        out[j, :] = [_quad(A, B, C, D, E, F, x, y) for x in xl]


def march_rows(coeffs, xs, ys, values, j0, j1):
    A, B, C, D, E, F = coeffs
    nxp = len(xs)
    ncx = nxp - 1
    segs = []
    rows = [values[j].tolist() for j in range(j0, j1 + 1)]
    for j in range(j0, j1):
        lo, hi = rows[j - j0], rows[j - j0 + 1]
        for i in range(ncx):
            b0 = lo[i] >= 0.0
            b1 = lo[i + 1] >= 0.0
            b2 = hi[i + 1] >= 0.0
            b3 = hi[i] >= 0.0
            if b0 == b1 == b2 == b3:
                continue
            bottom = 2 * (j * nxp + i)
            right = 2 * (j * nxp + i + 1) + 1
            top = 2 * ((j + 1) * nxp + i)
            left = 2 * (j * nxp + i) + 1
            if b0 == b2 and b1 == b3:
                xc = 0.5 * (float(xs[i]) + float(xs[i + 1]))
                yc = 0.5 * (float(ys[j]) + float(ys[j + 1]))
                bc = _quad(A, B, C, D, E, F, xc, yc) >= 0.0
                if bc == b0:
                    segs.append((bottom, right))
                    segs.append((top, left))
                else:
                    segs.append((bottom, left))
                    segs.append((right, top))
                continue
            cross = []
            if b0 != b1:
                cross.append(bottom)
            if b1 != b2:
                cross.append(right)
            if b2 != b3:
                cross.append(top)
            if b3 != b0:
                cross.append(left)
            segs.append((cross[0], cross[1]))
    return np.array(segs, dtype=np.int64).reshape(-1, 2)

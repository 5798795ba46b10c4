# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels; must stay operation-for-operation identical to _pykernels."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline double _quad(double A, double B, double C, double D, double E, double F,
                         double x, double y) noexcept nogil:
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def eval_rows(tuple coeffs, double[::1] xs, double[::1] ys, double[:, ::1] out,
              Py_ssize_t j0, Py_ssize_t j1):
    cdef double A = coeffs[0], B = coeffs[1], C = coeffs[2]
    cdef double D = coeffs[3], E = coeffs[4], F = coeffs[5]
    cdef Py_ssize_t i, j, nx = xs.shape[0]
    with nogil:
        for j in range(j0, j1):
            for i in range(nx):
                out[j, i] = _quad(A, B, C, D, E, F, xs[i], ys[j])


def march_rows(tuple coeffs, double[::1] xs, double[::1] ys, double[:, ::1] values,
               Py_ssize_t j0, Py_ssize_t j1):
    """Segments for cell rows ``j0 <= j < j1`` as an (n, 2) array of edge ids."""
    cdef double A = coeffs[0], B = coeffs[1], C = coeffs[2]
    cdef double D = coeffs[3], E = coeffs[4], F = coeffs[5]
    cdef Py_ssize_t nxp = xs.shape[0]
    cdef Py_ssize_t ncx = nxp - 1
    cdef Py_ssize_t cap = 2 * (j1 - j0) * ncx + 2
    cdef cnp.ndarray[cnp.int64_t, ndim=2] seg = np.empty((cap, 2), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] s = seg
    cdef Py_ssize_t n = 0, i, j
    cdef int b0, b1, b2, b3, bc, k
    cdef cnp.int64_t bottom, right, top, left
    cdef cnp.int64_t cross[4]
    cdef double xc, yc
    with nogil:
        for j in range(j0, j1):
            for i in range(ncx):
                b0 = values[j, i] >= 0.0
                b1 = values[j, i + 1] >= 0.0
                b2 = values[j + 1, i + 1] >= 0.0
                b3 = values[j + 1, i] >= 0.0
                if b0 == b1 and b1 == b2 and b2 == b3:
                    continue
                bottom = 2 * (j * nxp + i)
                right = 2 * (j * nxp + i + 1) + 1
                top = 2 * ((j + 1) * nxp + i)
                left = 2 * (j * nxp + i) + 1
                if b0 == b2 and b1 == b3:
                    xc = 0.5 * (xs[i] + xs[i + 1])
                    yc = 0.5 * (ys[j] + ys[j + 1])
                    bc = _quad(A, B, C, D, E, F, xc, yc) >= 0.0
                    if bc == b0:
                        s[n, 0] = bottom; s[n, 1] = right
                        s[n + 1, 0] = top; s[n + 1, 1] = left
                    else:
                        s[n, 0] = bottom; s[n, 1] = left
                        s[n + 1, 0] = right; s[n + 1, 1] = top
                    n += 2
                    continue
                k = 0
                if b0 != b1:
                    cross[k] = bottom; k += 1
                if b1 != b2:
                    cross[k] = right; k += 1
                if b2 != b3:
                    cross[k] = top; k += 1
                if b3 != b0:
                    cross[k] = left; k += 1
                s[n, 0] = cross[0]; s[n, 1] = cross[1]
                n += 1
    return seg[:n].copy()

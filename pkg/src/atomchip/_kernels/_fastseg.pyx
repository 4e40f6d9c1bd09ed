# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled segment-field kernel; mirrors pure.segment_fields exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt, INFINITY

BACKEND_NAME = "cython"

DEF LINE_EPS = 1e-9


def segment_fields(seg_a, seg_b, currents, exclusion, points, max_pairs=0):
    a_arr = np.ascontiguousarray(seg_a, dtype=np.float64).reshape(-1, 3)
    b_arr = np.ascontiguousarray(seg_b, dtype=np.float64).reshape(-1, 3)
    cur_arr = np.ascontiguousarray(currents, dtype=np.float64).reshape(-1)
    exc_arr = np.ascontiguousarray(exclusion, dtype=np.float64).reshape(-1)
    p_arr = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 3)

    cdef double[:, ::1] sa = a_arr
    cdef double[:, ::1] sb = b_arr
    cdef double[::1] cur = cur_arr
    cdef double[::1] exc = exc_arr
    cdef double[:, ::1] pts = p_arr

    cdef Py_ssize_t n = sa.shape[0]
    cdef Py_ssize_t m = pts.shape[0]
    out = np.zeros((m, 3), dtype=np.float64)
    clear = np.full(m, INFINITY, dtype=np.float64)
    cdef double[:, ::1] bv = out
    cdef double[::1] cl = clear
    if n == 0 or m == 0:
        return out, clear

    lens = np.empty(n, dtype=np.float64)
    uvec = np.empty((n, 3), dtype=np.float64)
    cdef double[::1] seg_len = lens
    cdef double[:, ::1] u = uvec
    cdef Py_ssize_t i, j
    cdef double dx, dy, dz, L

    for j in range(n):
        dx = sb[j, 0] - sa[j, 0]
        dy = sb[j, 1] - sa[j, 1]
        dz = sb[j, 2] - sa[j, 2]
        L = sqrt(dx * dx + dy * dy + dz * dz)
        seg_len[j] = L
        u[j, 0] = dx / L
        u[j, 1] = dy / L
        u[j, 2] = dz / L

    cdef double a1x, a1y, a1z, a2x, a2y, a2z
    cdef double fx, fy, fz, rho2, n1, n2, t, sine, scale
    cdef double bx, by, bz, over, dist, cmin, cut

    for i in range(m):
        bx = 0.0
        by = 0.0
        bz = 0.0
        cmin = INFINITY
        for j in range(n):
            a1x = pts[i, 0] - sa[j, 0]
            a1y = pts[i, 1] - sa[j, 1]
            a1z = pts[i, 2] - sa[j, 2]
            a2x = pts[i, 0] - sb[j, 0]
            a2y = pts[i, 1] - sb[j, 1]
            a2z = pts[i, 2] - sb[j, 2]
            fx = u[j, 1] * a1z - u[j, 2] * a1y
            fy = u[j, 2] * a1x - u[j, 0] * a1z
            fz = u[j, 0] * a1y - u[j, 1] * a1x
            rho2 = fx * fx + fy * fy + fz * fz
            t = u[j, 0] * a1x + u[j, 1] * a1y + u[j, 2] * a1z
            over = 0.0
            if t < 0.0:
                over = -t
            elif t > seg_len[j]:
                over = t - seg_len[j]
            dist = sqrt(rho2 + over * over) - exc[j]
            if dist < cmin:
                cmin = dist
            cut = LINE_EPS * seg_len[j]
            if rho2 > cut * cut:
                n1 = sqrt(a1x * a1x + a1y * a1y + a1z * a1z)
                n2 = sqrt(a2x * a2x + a2y * a2y + a2z * a2z)
                sine = t / n1 - (t - seg_len[j]) / n2
                scale = 1e-7 * cur[j] * sine / rho2
                bx += scale * fx
                by += scale * fy
                bz += scale * fz
        bv[i, 0] = bx
        bv[i, 1] = by
        bv[i, 2] = bz
        cl[i] = cmin
    return out, clear

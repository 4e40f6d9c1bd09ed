"""Numpy fallback for the segment-field kernel.

Field of a finite straight filament a->b carrying current I at point p
(Biot-Savart closed form, Griffiths p. 217 written vectorially):

    u = (b - a)/L,  a1 = p - a,  a2 = p - b
    B = 1e-7 * I * (u x a1)/|u x a1|^2 * (u.a1/|a1| - u.a2/|a2|)

|u x a1| is the perpendicular distance to the carrier line, so the
prefactor diverges on the line; on the segment body callers are protected
by the exclusion radius and on the extended line the closed form tends to
zero, which the kernel returns explicitly.
"""

from __future__ import annotations

import numpy as np

_LINE_EPS = 1e-9  # relative rho cutoff: treat as on the extended line

BACKEND_NAME = "numpy"


def segment_fields(
    seg_a: np.ndarray,
    seg_b: np.ndarray,
    currents: np.ndarray,
    exclusion: np.ndarray,
    points: np.ndarray,
    max_pairs: int = 4_000_000,
) -> tuple[np.ndarray, np.ndarray]:
    """Sum segment fields at each point.

    Returns (B [M,3] tesla, clearance [M]) where clearance is
    min_over_segments(distance to segment - segment exclusion radius);
    callers decide whether non-positive clearance is an error.
    """
    seg_a = np.asarray(seg_a, dtype=float).reshape(-1, 3)
    seg_b = np.asarray(seg_b, dtype=float).reshape(-1, 3)
    currents = np.asarray(currents, dtype=float).reshape(-1)
    exclusion = np.asarray(exclusion, dtype=float).reshape(-1)
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    n = seg_a.shape[0]
    m = points.shape[0]
    b_out = np.zeros((m, 3))
    clearance = np.full(m, np.inf)
    if n == 0 or m == 0:
        return b_out, clearance

    d = seg_b - seg_a
    seg_len = np.linalg.norm(d, axis=1)
    live = seg_len > 0.0
    if not live.all():
        # zero-length segments carry no field and no clearance constraint;
        # drop them so the unit-vector division stays finite
        seg_a, seg_b, d = seg_a[live], seg_b[live], d[live]
        currents, exclusion, seg_len = currents[live], exclusion[live], seg_len[live]
        n = seg_a.shape[0]
        if n == 0:
            return b_out, clearance
    u = d / seg_len[:, None]

    chunk = max(1, max_pairs // n)
    for start in range(0, m, chunk):
        p = points[start : start + chunk]  # (mc,3)
        a1 = p[:, None, :] - seg_a[None, :, :]  # (mc,n,3)
        a2 = p[:, None, :] - seg_b[None, :, :]
        f = np.cross(np.broadcast_to(u[None, :, :], a1.shape), a1)
        rho2 = np.einsum("ijk,ijk->ij", f, f)
        n1 = np.linalg.norm(a1, axis=2)
        n2 = np.linalg.norm(a2, axis=2)
        t = np.einsum("jk,ijk->ij", u, a1)  # axial coordinate along segment
        sine = t / np.maximum(n1, 1e-300) - (t - seg_len[None, :]) / np.maximum(n2, 1e-300)
        ok = rho2 > (_LINE_EPS * seg_len[None, :]) ** 2
        scale = np.where(ok, 1e-7 * currents[None, :] * sine / np.where(ok, rho2, 1.0), 0.0)
        b_out[start : start + chunk] = np.einsum("ij,ijk->ik", scale, f)

        over = np.clip(t - seg_len[None, :], 0.0, None) + np.clip(-t, 0.0, None)
        dist = np.sqrt(rho2 + over**2)
        clearance[start : start + chunk] = np.min(dist - exclusion[None, :], axis=1)
    return b_out, clearance

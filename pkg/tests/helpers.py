"""Shared test utilities: seeded random layouts and plain FD stencils.

The random layouts stay on physically sensible chip scales (millimeter
substrate, micrometer wires, milli-tesla bias) so field evaluations are
well conditioned.  Closed variants are exact circuits: every polyline
returns to its first vertex and every arc sweeps a full turn, which is
what conservation-law checks require.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from atomchip import (
    Arc,
    BiasField,
    ChipLayout,
    LayoutField,
    Polyline,
    Rect,
    SubstrateSpec,
    WirePath,
    field_at,
)

GOLDEN_DIR = Path(__file__).parent / "golden"


def golden_text(name: str) -> str:
    return (GOLDEN_DIR / name).read_text()


def random_layout(rng: np.random.Generator, closed: bool = False) -> ChipLayout:
    paths = []
    for i in range(int(rng.integers(1, 4))):
        if rng.uniform() < 0.3:
            c = rng.uniform(-2e-3, 2e-3, 2)
            r = 10 ** rng.uniform(-4.5, -3)
            a0 = float(rng.uniform(0, 360))
            sweep = 360.0 if closed else float(rng.uniform(40, 320))
            elems = (Arc((float(c[0]), float(c[1])), float(r), a0, a0 + sweep),)
        else:
            # closed polylines need >= 3 distinct vertices; a doubled-back
            # two-point loop carries exactly cancelling currents
            n = int(rng.integers(3, 6)) if closed else int(rng.integers(2, 6))
            pts = rng.uniform(-3e-3, 3e-3, (n, 2))
            if closed:
                pts = np.vstack([pts, pts[:1]])
            elems = (Polyline(tuple((float(x), float(y)) for x, y in pts)),)
        mag = float(rng.uniform(0.2, 2.0)) * (1 if rng.uniform() < 0.5 else -1)
        paths.append(WirePath(f"w{i}", 3e-6, 4e-6, mag, elems))
    bias = BiasField(*(float(v) for v in rng.uniform(-1e-3, 1e-3, 3)))
    substrate = SubstrateSpec("aln", Rect(0.0, 0.0, 12e-3, 12e-3), 500e-6)
    return ChipLayout(substrate=substrate, paths=tuple(paths), bias=bias)


def wire_dominated_point(
    rng: np.random.Generator, layout: ChipLayout, lo: float = 3e-5, hi: float = 5e-4
) -> tuple[np.ndarray, float]:
    """A point with clearance in [lo, hi] where the wires beat the bias.

    Bias-dominated far points have derivative magnitudes below what finite
    differences can resolve against |B|, so derivative checks sample here.
    """
    src = LayoutField(layout)
    bias = np.array(layout.bias.vector)
    while True:
        p = np.append(rng.uniform(-3e-3, 3e-3, 2), 10 ** rng.uniform(np.log10(lo), np.log10(hi)))
        c = float(src.clearance(p))
        if not lo <= c <= hi:
            continue
        if np.linalg.norm(field_at(src, p) - bias) >= 0.5 * np.linalg.norm(bias):
            return p, c


def fd_jacobian(source, p: np.ndarray, h: float) -> np.ndarray:
    """Plain central-difference Jacobian J[i, j] = dB_i/dx_j at fixed step."""
    cols = []
    for e in np.eye(3):
        cols.append((field_at(source, p + h * e) - field_at(source, p - h * e)) / (2 * h))
    return np.column_stack(cols)


def fd_hessian_of_magnitude(source, p: np.ndarray, h: float) -> np.ndarray:
    """Plain central-difference Hessian of |B| at fixed step."""

    def g(q: np.ndarray) -> float:
        return float(np.linalg.norm(field_at(source, q)))

    e = np.eye(3)
    hess = np.zeros((3, 3))
    g0 = g(p)
    for i in range(3):
        hess[i, i] = (g(p + h * e[i]) - 2 * g0 + g(p - h * e[i])) / h**2
        for j in range(i + 1, 3):
            v = (
                g(p + h * (e[i] + e[j]))
                - g(p + h * (e[i] - e[j]))
                - g(p - h * (e[i] - e[j]))
                + g(p - h * (e[i] + e[j]))
            ) / (4 * h**2)
            hess[i, j] = hess[j, i] = v
    return hess

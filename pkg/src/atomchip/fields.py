"""Magnetostatics over chip layouts.

Wires are thin filaments at z = height/2 (optionally subdivided k x k over
the cross-section); fields superpose segment closed forms plus the uniform
bias. Derivatives are adaptive central differences with one Richardson
extrapolation level rather than hand-coded analytic forms: steps scale with
the local clearance to the conductors, so derivative evaluations inherit
the exact geometric scaling of the field itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _kernels
from .errors import EvaluationTooCloseToWire, ZeroFieldNondifferentiable
from .layout import ChipLayout, Polyline, WirePath, discretize

ZERO_FIELD_EPS = 1e-12  # tesla; |B| below this counts as a field zero
_DEFAULT_CHORD_REL = 1e-4  # arc sagitta budget relative to arc radius
_FALLBACK_SCALE = 1e-4  # m; derivative step scale with no conductors nearby


def _path_chord_error(path: WirePath, chord_rel: float) -> float:
    radii = [el.radius for el in path.elements if not isinstance(el, Polyline)]
    if not radii:
        return 1e-6  # polylines are exact; tolerance is unused
    return chord_rel * min(radii)


def _subdivide_offsets(k: int, width: float, height: float) -> list[tuple[float, float]]:
    """(transverse, vertical) filament offsets for k x k subdivision."""
    fracs = [(i + 0.5) / k - 0.5 for i in range(k)]
    return [(fw * width, fh * height) for fw in fracs for fh in fracs]


class LayoutField:
    """Field source backed by a layout's discretized filaments."""

    def __init__(self, layout: ChipLayout, chord_rel: float = _DEFAULT_CHORD_REL, subdivide: int = 1):
        if subdivide < 1:
            raise ValueError("subdivide must be >= 1")
        self.layout = layout
        self.subdivide = subdivide
        seg_a: list[np.ndarray] = []
        seg_b: list[np.ndarray] = []
        currents: list[np.ndarray] = []
        exclusion: list[np.ndarray] = []
        for path in layout.paths:
            if path.current == 0.0:
                continue
            verts = discretize(path, _path_chord_error(path, chord_rel))
            a2 = verts[:-1]
            b2 = verts[1:]
            direction = b2 - a2
            length = np.linalg.norm(direction, axis=1)[:, None]
            normal = np.column_stack([-direction[:, 1], direction[:, 0]]) / length
            nseg = a2.shape[0]
            for off_w, off_z in _subdivide_offsets(subdivide, path.width, path.height):
                shift = normal * off_w
                za = np.full(nseg, path.filament_z + off_z)
                seg_a.append(np.column_stack([a2 + shift, za]))
                seg_b.append(np.column_stack([b2 + shift, za]))
                currents.append(np.full(nseg, path.current / subdivide**2))
                exclusion.append(np.full(nseg, path.exclusion_radius))
        if seg_a:
            self._seg_a = np.vstack(seg_a)
            self._seg_b = np.vstack(seg_b)
            self._currents = np.concatenate(currents)
            self._exclusion = np.concatenate(exclusion)
        else:
            self._seg_a = np.zeros((0, 3))
            self._seg_b = np.zeros((0, 3))
            self._currents = np.zeros(0)
            self._exclusion = np.zeros(0)
        self._bias = layout.bias.vector

    @property
    def segment_count(self) -> int:
        return self._seg_a.shape[0]

    def raw(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(B, clearance) without the too-close check; grids use this."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        b, clearance = _kernels.segment_fields(
            self._seg_a, self._seg_b, self._currents, self._exclusion, pts
        )
        return b + self._bias, clearance

    def field_batch(self, points: np.ndarray) -> np.ndarray:
        b, clearance = self.raw(points)
        worst = int(np.argmin(clearance))
        if clearance[worst] <= 0.0:
            pts = np.atleast_2d(np.asarray(points, dtype=float))
            raise EvaluationTooCloseToWire(pts[worst], float(clearance[worst]))
        return b

    def clearance(self, point: np.ndarray) -> float:
        _, c = self.raw(np.atleast_2d(point))
        return float(c[0])

    def step_scale(self, point: np.ndarray) -> float:
        c = self.clearance(point)
        if not math.isfinite(c):
            return _FALLBACK_SCALE
        return max(c, 0.0)


class SyntheticField:
    """Analytic field source for oracles and experiments."""

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], char_length: float = _FALLBACK_SCALE):
        self._fn = fn
        self._char_length = char_length

    def field_batch(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return np.asarray(self._fn(pts), dtype=float).reshape(pts.shape[0], 3)

    def clearance(self, point: np.ndarray) -> float:
        return math.inf

    def step_scale(self, point: np.ndarray) -> float:
        return self._char_length


@lru_cache(maxsize=64)
def _cached_layout_field(layout: ChipLayout, chord_rel: float, subdivide: int) -> LayoutField:
    return LayoutField(layout, chord_rel=chord_rel, subdivide=subdivide)


def as_field_source(obj, chord_rel: float = _DEFAULT_CHORD_REL, subdivide: int = 1):
    if isinstance(obj, ChipLayout):
        return _cached_layout_field(obj, chord_rel, subdivide)
    return obj


def segment_field(
    a,
    b,
    current: float,
    point,
    exclusion_radius: float = 0.0,
) -> np.ndarray:
    """Field of one finite segment; zero on the extended line, error on/near
    the segment body (distance <= exclusion_radius)."""
    field, clearance = _kernels.segment_fields(
        np.asarray(a, dtype=float).reshape(1, 3),
        np.asarray(b, dtype=float).reshape(1, 3),
        np.array([current], dtype=float),
        np.array([exclusion_radius], dtype=float),
        np.asarray(point, dtype=float).reshape(1, 3),
    )
    if clearance[0] <= 0.0:
        raise EvaluationTooCloseToWire(point, float(clearance[0]))
    return field[0]


def field_at(layout_or_source, point) -> np.ndarray:
    """Total field (tesla) at one point."""
    source = as_field_source(layout_or_source)
    return source.field_batch(np.asarray(point, dtype=float).reshape(1, 3))[0]


_EYE = np.eye(3)


def jacobian_at(
    layout_or_source,
    point,
    rel_step: float = 1e-3,
    target_rel: float = 1e-7,
    max_refine: int = 3,
) -> np.ndarray:
    """dB_i/dx_j by central differences with Richardson extrapolation.

    The step starts at rel_step times the local clearance scale and shrinks
    until the two-step Richardson residual is below target_rel relative.
    """
    source = as_field_source(layout_or_source)
    p = np.asarray(point, dtype=float).reshape(3)
    h = rel_step * source.step_scale(p)
    if h <= 0.0:
        raise EvaluationTooCloseToWire(p, 0.0)
    for _ in range(max_refine + 1):
        offsets = np.vstack([_EYE * h, -_EYE * h, _EYE * (h / 2), -_EYE * (h / 2)])
        b = source.field_batch(p[None, :] + offsets)
        j1 = (b[0:3] - b[3:6]).T / (2 * h)
        j2 = (b[6:9] - b[9:12]).T / h
        jac = (4 * j2 - j1) / 3
        err = np.max(np.abs(j2 - j1)) / 3
        if err <= target_rel * max(np.max(np.abs(jac)), 1e-300):
            return jac
        h /= 4
    return jac


def _magnitudes(source, points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(source.field_batch(points), axis=1)


def _hessian_stencil(source, p: np.ndarray, h: float, g0: float) -> np.ndarray:
    axis_pts = np.vstack([p + _EYE * h, p - _EYE * h])
    pairs = [(0, 1), (0, 2), (1, 2)]
    cross_pts = []
    for i, j in pairs:
        for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            cross_pts.append(p + si * h * _EYE[i] + sj * h * _EYE[j])
    g = _magnitudes(source, np.vstack([axis_pts, np.array(cross_pts)]))
    hess = np.zeros((3, 3))
    for i in range(3):
        hess[i, i] = (g[i] - 2 * g0 + g[3 + i]) / h**2
    for k, (i, j) in enumerate(pairs):
        gpp, gpm, gmp, gmm = g[6 + 4 * k : 10 + 4 * k]
        hess[i, j] = hess[j, i] = (gpp - gpm - gmp + gmm) / (4 * h**2)
    return hess


def hessian_of_magnitude(
    layout_or_source,
    point,
    rel_step: float = 1e-3,
    target_rel: float = 1e-6,
    max_refine: int = 3,
) -> np.ndarray:
    """Hessian of |B|; raises ZeroFieldNondifferentiable at a field zero."""
    source = as_field_source(layout_or_source)
    p = np.asarray(point, dtype=float).reshape(3)
    g0 = float(np.linalg.norm(source.field_batch(p[None, :])[0]))
    if g0 < ZERO_FIELD_EPS:
        raise ZeroFieldNondifferentiable(
            f"|B| = {g0:.3e} T at {tuple(p)} is below {ZERO_FIELD_EPS:.0e} T"
        )
    h = rel_step * source.step_scale(p)
    if h <= 0.0:
        raise EvaluationTooCloseToWire(p, 0.0)
    for _ in range(max_refine + 1):
        h1 = _hessian_stencil(source, p, h, g0)
        h2 = _hessian_stencil(source, p, h / 2, g0)
        hess = (4 * h2 - h1) / 3
        err = np.max(np.abs(h2 - h1)) / 3
        if err <= target_rel * max(np.max(np.abs(hess)), 1e-300):
            return hess
        h /= 4
    return hess


def gradient_of_magnitude(layout_or_source, point, rel_step: float = 1e-3) -> np.ndarray:
    """grad|B| = J^T B / |B| using the FD Jacobian."""
    source = as_field_source(layout_or_source)
    b = field_at(source, point)
    norm = float(np.linalg.norm(b))
    if norm < ZERO_FIELD_EPS:
        raise ZeroFieldNondifferentiable(
            f"|B| = {norm:.3e} T at {tuple(np.asarray(point))} is a field zero"
        )
    jac = jacobian_at(source, point, rel_step=rel_step)
    return jac.T @ b / norm


@dataclass(frozen=True)
class GridSpec:
    """Axis-aligned sample box: start/stop corners (m) and per-axis counts."""

    start: tuple[float, float, float]
    stop: tuple[float, float, float]
    shape: tuple[int, int, int]

    def __post_init__(self):
        if any(n < 1 for n in self.shape):
            raise ValueError("grid shape must be >= 1 per axis")
        for lo, hi, n in zip(self.start, self.stop, self.shape):
            if n > 1 and hi <= lo:
                raise ValueError("grid stop must exceed start on sampled axes")

    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(
            np.linspace(lo, hi, n) if n > 1 else np.array([lo])
            for lo, hi, n in zip(self.start, self.stop, self.shape)
        )

    @property
    def origin(self) -> tuple[float, float, float]:
        return self.start

    @property
    def spacing(self) -> tuple[float, float, float]:
        return tuple(
            (hi - lo) / (n - 1) if n > 1 else 0.0
            for lo, hi, n in zip(self.start, self.stop, self.shape)
        )

    def points(self) -> np.ndarray:
        ax = self.axes()
        mesh = np.meshgrid(*ax, indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=1)


@dataclass(frozen=True)
class FieldGrid:
    """Sampled field; row-major over (x, y, z) like GridSpec.points()."""

    spec: GridSpec
    points: np.ndarray
    b: np.ndarray
    valid: np.ndarray

    def to_csv(self) -> str:
        lines = ["x_um,y_um,z_um,Bx_G,By_G,Bz_G,Bmag_G"]
        mag = np.linalg.norm(self.b, axis=1)
        for (x, y, z), (bx, by, bz), m in zip(self.points, self.b, mag):
            row = (x / 1e-6, y / 1e-6, z / 1e-6, bx / 1e-4, by / 1e-4, bz / 1e-4, m / 1e-4)
            lines.append(",".join(f"{v:.9g}" for v in row))
        return "\n".join(lines) + "\n"


def field_grid(layout_or_source, spec: GridSpec) -> FieldGrid:
    """Sample the field on a grid; samples inside a conductor's exclusion
    radius are flagged invalid (B = NaN) rather than fatal."""
    source = as_field_source(layout_or_source)
    pts = spec.points()
    if hasattr(source, "raw"):
        b, clearance = source.raw(pts)
        valid = clearance > 0.0
        b = b.copy()
        b[~valid] = np.nan
    else:
        b = source.field_batch(pts)
        valid = np.ones(pts.shape[0], dtype=bool)
    return FieldGrid(spec=spec, points=pts, b=b, valid=valid)

"""Chip layout data model.

Coordinates are SI meters in the substrate plane; the substrate top surface
is z = 0 and wires occupy 0 <= z <= height, so field evaluation treats each
path as a filament at z = height/2. Wire centerlines are chains of polyline
and circular-arc elements; arcs are flattened for field work by
`discretize`, which bounds the chord sagitta r*(1 - cos(theta/2)) by the
caller's tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import LayoutError

_JUNCTION_TOL = 1e-12  # m; element chaining slack


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by center and size (meters)."""

    cx: float
    cy: float
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise LayoutError(f"rectangle size must be positive, got {self.width}x{self.height}")

    @property
    def xmin(self) -> float:
        return self.cx - self.width / 2

    @property
    def xmax(self) -> float:
        return self.cx + self.width / 2

    @property
    def ymin(self) -> float:
        return self.cy - self.height / 2

    @property
    def ymax(self) -> float:
        return self.cy + self.height / 2

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float, slack: float = 0.0) -> bool:
        return (
            self.xmin - slack <= x <= self.xmax + slack
            and self.ymin - slack <= y <= self.ymax + slack
        )

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.xmin <= other.xmin
            and other.xmax <= self.xmax
            and self.ymin <= other.ymin
            and other.ymax <= self.ymax
        )


# material -> (max current density [A/m^2], thermal conductivity [W/m/K])
# AlN carries roughly twice the current density of sapphire and conducts
# heat ~4.5x better.
SUBSTRATE_MATERIALS: dict[str, tuple[float, float]] = {
    "aln": (2e11, 175.0),
    "sapphire": (1e11, 175.0 / 4.5),
}


@dataclass(frozen=True)
class SubstrateSpec:
    """Substrate slab centered on the origin."""

    material: str
    extent: Rect
    thickness: float

    def __post_init__(self):
        if self.material not in SUBSTRATE_MATERIALS:
            raise LayoutError(
                f"unknown substrate material {self.material!r}; "
                f"expected one of {sorted(SUBSTRATE_MATERIALS)}"
            )
        if self.thickness <= 0:
            raise LayoutError("substrate thickness must be positive")

    @property
    def max_current_density(self) -> float:
        return SUBSTRATE_MATERIALS[self.material][0]

    @property
    def thermal_conductivity(self) -> float:
        return SUBSTRATE_MATERIALS[self.material][1]


@dataclass(frozen=True)
class Polyline:
    """Straight-segment element: ordered in-plane vertices."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise LayoutError("polyline needs at least two points")
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if math.hypot(x1 - x0, y1 - y0) <= _JUNCTION_TOL:
                raise LayoutError(f"consecutive identical vertices at ({x0}, {y0})")

    @property
    def start(self) -> tuple[float, float]:
        return self.points[0]

    @property
    def end(self) -> tuple[float, float]:
        return self.points[-1]

    def bounds(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass(frozen=True)
class Arc:
    """Circular-arc element swept from `start_deg` to `end_deg`.

    Positive sweep (end > start) runs counterclockwise; current flows along
    the sweep direction. Angles are plain degrees, not normalized, so a
    sweep may cover most of a circle.
    """

    center: tuple[float, float]
    radius: float
    start_deg: float
    end_deg: float

    def __post_init__(self):
        if self.radius <= 0:
            raise LayoutError("arc radius must be positive")
        if abs(self.end_deg - self.start_deg) < 1e-9:
            raise LayoutError("arc sweep must be nonzero")
        if abs(self.end_deg - self.start_deg) > 360.0 + 1e-9:
            raise LayoutError("arc sweep beyond a full turn overlaps itself")

    @property
    def sweep_deg(self) -> float:
        return self.end_deg - self.start_deg

    def point_at(self, angle_deg: float) -> tuple[float, float]:
        a = math.radians(angle_deg)
        return (
            self.center[0] + self.radius * math.cos(a),
            self.center[1] + self.radius * math.sin(a),
        )

    @property
    def start(self) -> tuple[float, float]:
        return self.point_at(self.start_deg)

    @property
    def end(self) -> tuple[float, float]:
        return self.point_at(self.end_deg)

    def bounds(self) -> tuple[float, float, float, float]:
        lo, hi = sorted((self.start_deg, self.end_deg))
        pts = [self.start, self.end]
        # include axis extremes covered by the sweep
        k0 = math.ceil(lo / 90.0)
        k = k0
        while k * 90.0 <= hi:
            pts.append(self.point_at(k * 90.0))
            k += 1
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)


PathElement = Polyline | Arc


@dataclass(frozen=True)
class WirePath:
    """A single conductor: rectangular cross-section, chained centerline."""

    path_id: str
    width: float
    height: float
    current: float
    elements: tuple[PathElement, ...]

    def __post_init__(self):
        if not self.path_id:
            raise LayoutError("path id must be non-empty")
        if self.width <= 0 or self.height <= 0:
            raise LayoutError(
                f"path {self.path_id!r}: cross-section must be positive, "
                f"got {self.width}x{self.height}"
            )
        if not self.elements:
            raise LayoutError(f"path {self.path_id!r} has no centerline elements")
        for prev, nxt in zip(self.elements, self.elements[1:]):
            (x0, y0), (x1, y1) = prev.end, nxt.start
            if math.hypot(x1 - x0, y1 - y0) > _JUNCTION_TOL:
                raise LayoutError(
                    f"path {self.path_id!r}: element starting at ({x1}, {y1}) "
                    f"does not continue from ({x0}, {y0})"
                )

    @property
    def exclusion_radius(self) -> float:
        # half the larger cross-section dimension plus 1 nm of slack
        return max(self.width, self.height) / 2 + 1e-9

    @property
    def filament_z(self) -> float:
        return self.height / 2

    def bounds(self) -> tuple[float, float, float, float]:
        bs = [el.bounds() for el in self.elements]
        return (
            min(b[0] for b in bs),
            min(b[1] for b in bs),
            max(b[2] for b in bs),
            max(b[3] for b in bs),
        )

    def length(self) -> float:
        total = 0.0
        for el in self.elements:
            if isinstance(el, Polyline):
                total += sum(
                    math.hypot(x1 - x0, y1 - y0)
                    for (x0, y0), (x1, y1) in zip(el.points, el.points[1:])
                )
            else:
                total += el.radius * abs(math.radians(el.sweep_deg))
        return total


@dataclass(frozen=True)
class BiasField:
    """Uniform external field, tesla."""

    bx: float = 0.0
    by: float = 0.0
    bz: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.bx, self.by, self.bz])

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.bx**2 + self.by**2 + self.bz**2)


@dataclass(frozen=True)
class MirrorSpec:
    """On-chip mirror plan: coated region and keep-out gap around wires."""

    gap_to_wires: float
    region: Rect | None = None  # None: coating covers the substrate extent
    coating_height: float = 0.0

    def __post_init__(self):
        if self.gap_to_wires < 0:
            raise LayoutError("mirror gap must be non-negative")
        if self.coating_height < 0:
            raise LayoutError("mirror coating height must be non-negative")


@dataclass(frozen=True)
class PadSpec:
    """Wire-bond pad tied to a path."""

    pad_id: str
    region: Rect
    wire_id: str

    def __post_init__(self):
        if not self.pad_id:
            raise LayoutError("pad id must be non-empty")


@dataclass(frozen=True)
class ChipLayout:
    substrate: SubstrateSpec
    paths: tuple[WirePath, ...] = ()
    bias: BiasField = field(default_factory=BiasField)
    mirror: MirrorSpec | None = None
    pads: tuple[PadSpec, ...] = ()
    # Free-text annotations (generator assumptions, figure readings). They
    # serialize as comment lines and are dropped on parse.
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        ids = [p.path_id for p in self.paths]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise LayoutError(f"duplicate path ids: {dup}")
        pad_ids = [p.pad_id for p in self.pads]
        if len(set(pad_ids)) != len(pad_ids):
            raise LayoutError("duplicate pad ids")
        extent = self.substrate.extent
        for p in self.paths:
            bx0, by0, bx1, by1 = p.bounds()
            if not (
                extent.contains(bx0, by0, _JUNCTION_TOL)
                and extent.contains(bx1, by1, _JUNCTION_TOL)
            ):
                raise LayoutError(
                    f"path {p.path_id!r} leaves the substrate extent "
                    f"([{extent.xmin}, {extent.xmax}] x [{extent.ymin}, {extent.ymax}])"
                )
        known = set(ids)
        for pad in self.pads:
            if pad.wire_id not in known:
                raise LayoutError(
                    f"pad {pad.pad_id!r} references unknown path {pad.wire_id!r}"
                )
            if not extent.contains_rect(pad.region):
                raise LayoutError(f"pad {pad.pad_id!r} leaves the substrate extent")
        if self.mirror is not None and self.mirror.region is not None:
            if not extent.contains_rect(self.mirror.region):
                raise LayoutError("mirror region leaves the substrate extent")

    def path(self, path_id: str) -> WirePath:
        for p in self.paths:
            if p.path_id == path_id:
                return p
        raise KeyError(path_id)

    @property
    def mirror_region(self) -> Rect | None:
        if self.mirror is None:
            return None
        return self.mirror.region if self.mirror.region is not None else self.substrate.extent


def arc_segment_count(radius: float, sweep_deg: float, max_chord_error: float) -> int:
    """Chords needed so each sagitta r*(1 - cos(theta/2)) <= tolerance."""
    if max_chord_error <= 0:
        raise ValueError("chord tolerance must be positive")
    ratio = max(1.0 - max_chord_error / radius, -1.0)
    theta_max = 2.0 * math.acos(ratio)  # max per-chord sweep, radians
    sweep = abs(math.radians(sweep_deg))
    if theta_max <= 0:
        return max(1, math.ceil(sweep / 1e-3))
    return max(1, math.ceil(sweep / theta_max - 1e-12))


def discretize(path: WirePath, max_chord_error: float) -> np.ndarray:
    """Flatten the centerline to an (N, 2) vertex array.

    Polyline vertices pass through unchanged; each arc becomes the minimal
    uniform chord fan keeping the sagitta within `max_chord_error`, with
    exact endpoints. Junction points between elements are emitted once.
    """
    verts: list[tuple[float, float]] = []
    for el in path.elements:
        if isinstance(el, Polyline):
            pts = list(el.points)
        else:
            n = arc_segment_count(el.radius, el.sweep_deg, max_chord_error)
            angles = np.linspace(el.start_deg, el.end_deg, n + 1)
            pts = [el.point_at(a) for a in angles]
        if verts:
            pts = pts[1:]  # drop duplicated junction vertex
        verts.extend(pts)
    return np.asarray(verts, dtype=float)


@dataclass(frozen=True)
class GeometryFinding:
    """Result row from validate_geometry."""

    kind: str  # "short" or "self_intersection"
    subjects: tuple[str, ...]
    distance: float
    limit: float
    message: str


def _path_shape(path: WirePath, chord_error: float):
    from shapely.geometry import LineString

    return LineString(discretize(path, chord_error))


def validate_geometry(layout: ChipLayout) -> list[GeometryFinding]:
    """Flag overlapping conductors and self-intersecting centerlines.

    Conductors are treated as their centerlines inflated by width/2; two
    distinct paths whose outlines intersect are reported once per pair,
    ordered by path id. Touching endpoints of a closed path do not count
    as self-intersection.
    """
    findings: list[GeometryFinding] = []
    paths = sorted(layout.paths, key=lambda p: p.path_id)
    shapes = {}
    outlines = {}
    for p in paths:
        chord = max(p.width / 8, 1e-9)
        line = _path_shape(p, chord)
        shapes[p.path_id] = line
        outlines[p.path_id] = line.buffer(p.width / 2)
        if not line.is_simple:
            findings.append(
                GeometryFinding(
                    kind="self_intersection",
                    subjects=(p.path_id,),
                    distance=0.0,
                    limit=0.0,
                    message=f"path {p.path_id!r} centerline crosses itself",
                )
            )
    for i, a in enumerate(paths):
        for b in paths[i + 1 :]:
            if outlines[a.path_id].intersects(outlines[b.path_id]):
                dist = shapes[a.path_id].distance(shapes[b.path_id])
                limit = (a.width + b.width) / 2
                findings.append(
                    GeometryFinding(
                        kind="short",
                        subjects=(a.path_id, b.path_id),
                        distance=float(dist),
                        limit=limit,
                        message=(
                            f"paths {a.path_id!r} and {b.path_id!r} overlap: "
                            f"centerline distance {dist * 1e6:.3f} um < "
                            f"{limit * 1e6:.3f} um"
                        ),
                    )
                )
    return findings


def _scale_element(el: PathElement, s: float) -> PathElement:
    if isinstance(el, Polyline):
        return Polyline(tuple((x * s, y * s) for x, y in el.points))
    return Arc((el.center[0] * s, el.center[1] * s), el.radius * s, el.start_deg, el.end_deg)


def scale_layout(layout: ChipLayout, s: float) -> ChipLayout:
    """Scale every length by `s`, keeping currents; fields then scale 1/s.

    The uniform bias scales by 1/s with the wire fields, so the scaled
    layout is magnetically similar: |B| at scaled points is |B|/s, traps
    sit at scaled locations, and curvatures divide by s^3.
    """
    if s <= 0:
        raise ValueError("scale factor must be positive")
    substrate = replace(
        layout.substrate,
        extent=Rect(
            layout.substrate.extent.cx * s,
            layout.substrate.extent.cy * s,
            layout.substrate.extent.width * s,
            layout.substrate.extent.height * s,
        ),
        thickness=layout.substrate.thickness * s,
    )
    paths = tuple(
        replace(
            p,
            width=p.width * s,
            height=p.height * s,
            elements=tuple(_scale_element(el, s) for el in p.elements),
        )
        for p in layout.paths
    )
    pads = tuple(
        replace(
            pad,
            region=Rect(pad.region.cx * s, pad.region.cy * s, pad.region.width * s, pad.region.height * s),
        )
        for pad in layout.pads
    )
    mirror = layout.mirror
    if mirror is not None:
        region = mirror.region
        if region is not None:
            region = Rect(region.cx * s, region.cy * s, region.width * s, region.height * s)
        mirror = replace(
            mirror,
            gap_to_wires=mirror.gap_to_wires * s,
            region=region,
            coating_height=mirror.coating_height * s,
        )
    bias = BiasField(layout.bias.bx / s, layout.bias.by / s, layout.bias.bz / s)
    return ChipLayout(
        substrate=substrate, paths=paths, bias=bias, mirror=mirror, pads=pads, notes=layout.notes
    )

"""Parametric generators for the canonical wire patterns.

Each generator is a pure function from a parameter record to a ChipLayout;
the geometric assumptions that a drawing alone cannot pin down (winding
directions, lead routing, current allocation between circuits) are recorded
in the layout's notes so they serialize as comments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import MU0
from .layout import (
    Arc,
    BiasField,
    ChipLayout,
    PadSpec,
    Polyline,
    Rect,
    SubstrateSpec,
    WirePath,
)

_PAD_SIZE = 800e-6
_CHIP = 12e-3  # default square substrate edge


def _substrate(material: str = "aln", size: float = _CHIP) -> SubstrateSpec:
    return SubstrateSpec(material=material, extent=Rect(0.0, 0.0, size, size), thickness=500e-6)


def gen_u_trap(
    width: float = 300e-6,
    height: float = 1e-6,
    current: float = 2.0,
    bar_length: float = 1e-3,
    arm_length: float = 1.5e-3,
    bias: BiasField | None = None,
) -> ChipLayout:
    """U-shaped wire: one bar, two parallel arms, a quadrupole above the bar.

    The default bias is perpendicular to the bar so the analyzed trap is the
    wire-guide zero bent closed by the arms (a quadrupole, zero minimum).
    """
    if width <= 0 or height <= 0 or bar_length <= 0 or arm_length <= 0:
        raise ValueError("u-trap dimensions must be positive")
    if bias is None:
        # Cancellation height mu0*I/(2*pi*B) ~ 0.4 mm for the defaults.
        bias = BiasField(0.0, math.copysign(1e-3, current), 0.0)
    hx = bar_length / 2
    path = WirePath(
        path_id="u_trap",
        width=width,
        height=height,
        current=current,
        elements=(
            Polyline(((-hx, arm_length), (-hx, 0.0), (hx, 0.0), (hx, arm_length))),
        ),
    )
    pads = (
        PadSpec("pad_in", Rect(-hx, arm_length + _PAD_SIZE / 4, _PAD_SIZE, _PAD_SIZE), "u_trap"),
        PadSpec("pad_out", Rect(hx, arm_length + _PAD_SIZE / 4, _PAD_SIZE, _PAD_SIZE), "u_trap"),
    )
    return ChipLayout(
        substrate=_substrate(),
        paths=(path,),
        bias=bias,
        pads=pads,
        notes=(
            "u trap: bar along x with arms toward +y; bias perpendicular to the bar",
        ),
    )


def gen_side_guide(
    current: float = 1.0,
    bias: float = 2e-3,
    length: float = 10e-3,
    width: float = 30e-6,
    height: float = 1e-6,
) -> ChipLayout:
    """Straight wire plus perpendicular bias: a guide at z = mu0*I/(2*pi*B)."""
    if current == 0:
        raise ValueError("side guide needs a nonzero current")
    if bias <= 0:
        raise ValueError("side guide needs a positive bias magnitude")
    path = WirePath(
        path_id="guide",
        width=width,
        height=height,
        current=current,
        elements=(Polyline(((-length / 2, 0.0), (length / 2, 0.0))),),
    )
    return ChipLayout(
        substrate=_substrate(),
        paths=(path,),
        bias=BiasField(0.0, math.copysign(bias, current), 0.0),
        notes=(f"side guide: zero line at {MU0 * abs(current) / (2 * math.pi * bias):.3e} m",),
    )


@dataclass(frozen=True)
class IoffeParams:
    """Two concentric C-shaped loop circuits sharing a +x lead corridor.

    `current` is the drive current of the outer (return) loop; the inner
    pinch loop carries current * inner_current_ratio in the opposite
    circulation. The ratio places the field pinch; the drawing this pattern
    is read from does not determine it, so it is an explicit parameter.
    """

    r_inner: float = 10e-6
    r_outer: float = 15e-6
    current: float = 1.0
    inner_current_ratio: float = 0.435
    width_inner: float = 1.5e-6
    height_inner: float = 2e-6
    width_outer: float = 2.4e-6
    height_outer: float = 3e-6
    lead_half_gap_inner: float = 2.3e-6
    lead_half_gap_outer: float = 7.35e-6
    bias: tuple[float, float, float] | None = None

    def __post_init__(self):
        if not 0 < self.r_inner < self.r_outer:
            raise ValueError("need 0 < r_inner < r_outer")
        if self.current == 0:
            raise ValueError("need a nonzero current")
        if not 0 < self.lead_half_gap_inner < self.r_inner:
            raise ValueError("inner lead gap must fit inside the inner loop")
        if not self.lead_half_gap_inner < self.lead_half_gap_outer < self.r_outer:
            raise ValueError("outer lead gap must nest outside the inner pair")


# Corridor fan-out: lead pairs run tightly spaced until these x positions,
# then diverge to bondable pads. The outer pair fans first and steeper so
# the inner pair opens inside its wedge without crossing it.
_FAN_OUTER = (1.8e-3, 3.0e-3, 3.3e-3)  # (keep-tight until, fan until, pad |y|)
_FAN_INNER = (2.0e-3, 3.2e-3, 1.5e-3)
_PAD_X = 4.2e-3


def _c_loop(
    path_id: str,
    radius: float,
    half_gap: float,
    width: float,
    height: float,
    current: float,
    clockwise: bool,
    fan: tuple[float, float, float],
) -> WirePath:
    """C-shaped loop with a lead pair leaving through the +x window."""
    x_att = math.sqrt(radius * radius - half_gap * half_gap)
    delta = math.degrees(math.asin(half_gap / radius))
    keep, fan_to, pad_y = fan
    top = ((_PAD_X, pad_y), (fan_to, pad_y), (keep, half_gap), (x_att, half_gap))
    bot = ((x_att, -half_gap), (keep, -half_gap), (fan_to, -pad_y), (_PAD_X, -pad_y))
    if clockwise:
        # enter on the bottom wall, wind clockwise, exit on the top wall
        arc = Arc((0.0, 0.0), radius, -delta, -(360.0 - delta))
        elements = (Polyline(bot[::-1]), arc, Polyline(top[::-1]))
    else:
        arc = Arc((0.0, 0.0), radius, delta, 360.0 - delta)
        elements = (Polyline(top), arc, Polyline(bot))
    return WirePath(path_id=path_id, width=width, height=height, current=current, elements=elements)


def gen_wl_ioffe(p: IoffeParams) -> ChipLayout:
    """Concentric-loop pattern making a 3D harmonic minimum above the center.

    Inner loop counter-clockwise, outer loop clockwise (opposed circulation
    pinches the axial field); both lead pairs exit along +x, nested so the
    inner pair threads the outer loop's window.
    """
    inner = _c_loop(
        "ioffe_inner",
        p.r_inner,
        p.lead_half_gap_inner,
        p.width_inner,
        p.height_inner,
        p.current * p.inner_current_ratio,
        clockwise=False,
        fan=_FAN_INNER,
    )
    outer = _c_loop(
        "ioffe_outer",
        p.r_outer,
        p.lead_half_gap_outer,
        p.width_outer,
        p.height_outer,
        p.current,
        clockwise=True,
        fan=_FAN_OUTER,
    )
    notes = [
        "wl ioffe reading: two C-shaped loop circuits, shared +x lead corridor",
        (
            f"inner loop r={p.r_inner * 1e6:g} um ccw at "
            f"{p.current * p.inner_current_ratio:g} A pinches against the outer "
            f"loop r={p.r_outer * 1e6:g} um cw at {p.current:g} A"
        ),
        "the inner lead pair threads the outer loop's corridor window",
    ]
    if p.r_outer > 30e-6:
        notes.append(
            "warning: outer radius exceeds ~30 um; the trap leaves the "
            "Lamb-Dicke regime for optical addressing"
        )
    bias = BiasField(*p.bias) if p.bias is not None else BiasField()
    pads = (
        PadSpec("pad_inner_top", Rect(_PAD_X, _FAN_INNER[2], _PAD_SIZE, _PAD_SIZE), "ioffe_inner"),
        PadSpec("pad_inner_bot", Rect(_PAD_X, -_FAN_INNER[2], _PAD_SIZE, _PAD_SIZE), "ioffe_inner"),
        PadSpec("pad_outer_top", Rect(_PAD_X, _FAN_OUTER[2], _PAD_SIZE, _PAD_SIZE), "ioffe_outer"),
        PadSpec("pad_outer_bot", Rect(_PAD_X, -_FAN_OUTER[2], _PAD_SIZE, _PAD_SIZE), "ioffe_outer"),
    )
    return ChipLayout(
        substrate=_substrate(),
        paths=(inner, outer),
        bias=bias,
        pads=pads,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class SplitterParams:
    wire_count: int = 5
    width: float = 3e-6
    height: float = 4e-6
    spacing: float = 3e-6  # edge-to-edge gap between neighbors
    length: float = 1e-3
    currents: tuple[float, ...] = ()

    def __post_init__(self):
        if self.wire_count < 1:
            raise ValueError("need at least one wire")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.currents and len(self.currents) != self.wire_count:
            raise ValueError("currents must match wire_count")

    def resolved_currents(self) -> tuple[float, ...]:
        if self.currents:
            return self.currents
        return tuple(1.0 if i % 2 == 0 else -1.0 for i in range(self.wire_count))


def gen_five_wire_splitter(p: SplitterParams = SplitterParams()) -> ChipLayout:
    """Parallel equal-length wires centered on the origin, alternating signs."""
    currents = p.resolved_currents()
    pitch = p.width + p.spacing
    paths = []
    for i, cur in enumerate(currents):
        x = (i - (p.wire_count - 1) / 2) * pitch
        paths.append(
            WirePath(
                path_id=f"splitter_{i}",
                width=p.width,
                height=p.height,
                current=cur,
                elements=(Polyline(((x, -p.length / 2), (x, p.length / 2))),),
            )
        )
    return ChipLayout(
        substrate=_substrate(),
        paths=tuple(paths),
        notes=("parallel splitter wires along y, centered on the origin",),
    )


# Uniform bias for the reference pinch trap, frozen after tuning.  The
# pattern field has a critical point of its vertical component 7.88 um above
# the loop center (gradient zero in the whole symmetry plane); this bias
# cancels the pattern field there except for a 10 mG bottom along +z, which
# sets the stiff in-plane curvature (gradient^2 / bottom) to 2.0e10 G/cm^2.
_IOFFE_FIXTURE_BIAS = (-1.58804710e-3, 0.0, 1.52884106e-2)


def wl_ioffe_paper_fixture() -> ChipLayout:
    """Concentric-loop pinch trap with the frozen reference bias applied."""
    return gen_wl_ioffe(IoffeParams(bias=_IOFFE_FIXTURE_BIAS))

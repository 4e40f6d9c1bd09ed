"""Fabrication design-rule checks.

Severity taxonomy: violations of physical limits (current density, etch
ceilings, shorted or oversized structures) are errors; yield and ergonomics
concerns (marginal wet-etch widths, expensive evaporation, small mirrors,
pads crowding the edge) are warnings. Report lines are tab-separated and
sorted by rule id then subject so runs diff cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleDimensions
from .layout import ChipLayout, validate_geometry

ERROR = "error"
WARNING = "warning"

GOLD_RESISTIVITY = 2.44e-8  # ohm*m
BOND_WIRE_CURRENT = 0.2  # A; a single bond wire handles a few hundred mA
HARD_HEIGHT_CAP = 5e-6  # m; no technique reaches beyond this
EVAPORATION_SOFT_CAP = 1e-6  # m; evaporated gold beyond ~1 um gets costly
MIRROR_MIN_GAP = 10e-6  # m; a usable mirror needs > 10 um to the wires
MIRROR_MIN_AREA = 5e-4  # m^2 (5 cm^2)
PAD_EDGE_CLEARANCE = 1e-3  # m; bonding needs pads < 1 mm from the edge is bad


@dataclass(frozen=True)
class TechniqueSpec:
    name: str
    min_width: float
    max_height: float
    min_spacing: float
    mask: str
    height_tolerance: float | None = None
    notes: str = ""


TECHNIQUES: dict[str, TechniqueSpec] = {
    "wet_etch": TechniqueSpec(
        name="wet_etch",
        min_width=30e-6,
        max_height=1e-6,
        min_spacing=30e-6,
        mask="transparency",
        notes="isotropic etch; widths of 10-30 um print but with degraded edges",
    ),
    "ion_mill": TechniqueSpec(
        name="ion_mill",
        min_width=1e-6,
        max_height=1e-6,
        min_spacing=1e-6,
        mask="chrome",
        notes="argon milling of evaporated gold; watch substrate heating",
    ),
    "lift_off": TechniqueSpec(
        name="lift_off",
        min_width=1e-6,
        max_height=1.5e-6,
        min_spacing=1e-6,
        mask="chrome",
        notes="image-reversal resist; suited to wires under 10 um wide",
    ),
    "electroplating": TechniqueSpec(
        name="electroplating",
        min_width=1e-6,
        max_height=4e-6,
        min_spacing=3e-6,
        mask="chrome",
        height_tolerance=0.5e-6,
        notes="75% yield at +-0.5 um height accuracy",
    ),
}


def recommend_technique(width: float, height: float) -> str:
    """Pick a fabrication technique for a wire cross-section.

    Decision windows, ties resolved toward the simpler process:
    wide and thin -> wet etch; narrow and thin -> lift-off; anything tall
    -> electroplating; the remaining (mid-width, thin) cases -> ion mill.
    """
    if width <= 0 or height <= 0:
        raise InfeasibleDimensions(f"cross-section must be positive, got {width}x{height}")
    if height > HARD_HEIGHT_CAP:
        raise InfeasibleDimensions(
            f"height {height * 1e6:.3g} um exceeds the {HARD_HEIGHT_CAP * 1e6:.0f} um ceiling"
        )
    if width >= 30e-6 and height <= 1e-6:
        return "wet_etch"
    if width < 10e-6 and height <= 1.5e-6:
        return "lift_off"
    if height > 1.5e-6:
        return "electroplating"
    return "ion_mill"


@dataclass(frozen=True)
class DrcViolation:
    rule_id: str
    severity: str
    subject: str
    measured: str
    limit: str
    message: str

    def line(self) -> str:
        return "\t".join(
            (self.rule_id, self.severity, self.subject, self.measured, self.limit, self.message)
        )


def _um(value: float) -> str:
    return f"{value * 1e6:.6g}"


def check_current_density(layout: ChipLayout) -> list[DrcViolation]:
    """J = |I|/(w*h) against the substrate's dissipation-limited maximum."""
    j_max = layout.substrate.max_current_density
    out = []
    for p in layout.paths:
        j = abs(p.current) / (p.width * p.height)
        if j > j_max:
            out.append(
                DrcViolation(
                    rule_id="CURRENT-DENSITY",
                    severity=ERROR,
                    subject=p.path_id,
                    measured=f"{j:.6g}",
                    limit=f"{j_max:.6g}",
                    message=(
                        f"current density {j:.3g} A/m^2 exceeds the "
                        f"{layout.substrate.material} limit {j_max:.3g} A/m^2"
                    ),
                )
            )
    return out


def _pair_gaps(layout: ChipLayout) -> dict[tuple[str, str], float]:
    from shapely.geometry import LineString

    from .layout import discretize

    # Chord sag shrinks measured arc clearances, so keep it far below the
    # micrometer-scale spacing rules.
    lines = {}
    for p in layout.paths:
        lines[p.path_id] = (LineString(discretize(p, 5e-9)), p.width)
    gaps = {}
    ids = sorted(lines)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            la, wa = lines[a]
            lb, wb = lines[b]
            gaps[(a, b)] = float(la.distance(lb)) - (wa + wb) / 2
    return gaps


def check_feature_rules(layout: ChipLayout, technique: str) -> list[DrcViolation]:
    """Width floor, height ceiling and spacing floor for one technique."""
    if technique not in TECHNIQUES:
        raise KeyError(f"unknown technique {technique!r}")
    spec = TECHNIQUES[technique]
    out = []
    for p in layout.paths:
        if p.width < spec.min_width:
            if technique == "wet_etch" and p.width >= 10e-6:
                out.append(
                    DrcViolation(
                        rule_id="WETETCH-WIDTH-BAND",
                        severity=WARNING,
                        subject=p.path_id,
                        measured=_um(p.width),
                        limit=_um(spec.min_width),
                        message=(
                            f"width {_um(p.width)} um is below the 30 um wet-etch "
                            "floor; 10-30 um prints with degraded edge quality"
                        ),
                    )
                )
            else:
                out.append(
                    DrcViolation(
                        rule_id="FEATURE-WIDTH",
                        severity=ERROR,
                        subject=p.path_id,
                        measured=_um(p.width),
                        limit=_um(spec.min_width),
                        message=(
                            f"width {_um(p.width)} um is below the {technique} "
                            f"minimum {_um(spec.min_width)} um"
                        ),
                    )
                )
        if p.height > spec.max_height:
            out.append(
                DrcViolation(
                    rule_id="FEATURE-HEIGHT",
                    severity=ERROR,
                    subject=p.path_id,
                    measured=_um(p.height),
                    limit=_um(spec.max_height),
                    message=(
                        f"height {_um(p.height)} um exceeds the {technique} "
                        f"ceiling {_um(spec.max_height)} um"
                    ),
                )
            )
        elif technique == "lift_off" and p.height > EVAPORATION_SOFT_CAP:
            out.append(
                DrcViolation(
                    rule_id="EVAPORATION-HEIGHT",
                    severity=WARNING,
                    subject=p.path_id,
                    measured=_um(p.height),
                    limit=_um(EVAPORATION_SOFT_CAP),
                    message=(
                        f"evaporating {_um(p.height)} um of gold is slow and "
                        "costly; above 1 um consider electroplating"
                    ),
                )
            )
    for (a, b), gap in sorted(_pair_gaps(layout).items()):
        if gap < spec.min_spacing:
            out.append(
                DrcViolation(
                    rule_id="FEATURE-SPACING",
                    severity=ERROR,
                    subject=f"{a}+{b}",
                    measured=_um(gap),
                    limit=_um(spec.min_spacing),
                    message=(
                        f"gap {_um(gap)} um between {a!r} and {b!r} is below the "
                        f"{technique} minimum {_um(spec.min_spacing)} um"
                    ),
                )
            )
    return out


@dataclass(frozen=True)
class PowerLine:
    path_id: str
    length: float  # m
    resistance: float  # ohm
    power: float  # W
    voltage: float  # V


@dataclass(frozen=True)
class PowerReport:
    lines: tuple[PowerLine, ...]
    total_power: float
    substrate_delta_t: float  # K; crude conduction drop across the slab

    def render(self) -> str:
        out = ["path\tlength_mm\tR_ohm\tP_W\tV_V"]
        for ln in self.lines:
            out.append(
                f"{ln.path_id}\t{ln.length * 1e3:.6g}\t{ln.resistance:.6g}"
                f"\t{ln.power:.6g}\t{ln.voltage:.6g}"
            )
        out.append(f"total_power_W\t{self.total_power:.6g}")
        out.append(f"substrate_delta_t_K\t{self.substrate_delta_t:.6g}")
        return "\n".join(out) + "\n"


def power_report(layout: ChipLayout) -> PowerReport:
    """Per-path R = rho*L/(w*h) and dissipation, gold resistivity 2.44e-8.

    substrate_delta_t estimates the conduction drop t*P/(k*A) across the
    substrate slab — a scale for comparing substrate materials, not a
    thermal model.
    """
    lines = []
    total = 0.0
    for p in layout.paths:
        length = p.length()
        resistance = GOLD_RESISTIVITY * length / (p.width * p.height)
        power = p.current**2 * resistance
        lines.append(
            PowerLine(
                path_id=p.path_id,
                length=length,
                resistance=resistance,
                power=power,
                voltage=abs(p.current) * resistance,
            )
        )
        total += power
    sub = layout.substrate
    delta_t = total * sub.thickness / (sub.thermal_conductivity * sub.extent.area)
    return PowerReport(lines=tuple(lines), total_power=total, substrate_delta_t=delta_t)


@dataclass(frozen=True)
class BondLine:
    pad_id: str
    wire_id: str
    current: float
    bonds: int


def bond_plan(layout: ChipLayout) -> tuple[BondLine, ...]:
    """Bond wires per pad: ceil(|I|/0.2 A) plus one redundant bond when the
    pad carries current at all (a single bond cannot take more than a few
    hundred mA)."""
    plan = []
    for pad in layout.pads:
        current = abs(layout.path(pad.wire_id).current)
        bonds = max(1, math.ceil(current / BOND_WIRE_CURRENT - 1e-12))
        if current > 0:
            bonds += 1
        plan.append(BondLine(pad_id=pad.pad_id, wire_id=pad.wire_id, current=current, bonds=bonds))
    return tuple(plan)


def mirror_lint(layout: ChipLayout) -> list[DrcViolation]:
    """Mirror, pad placement and structure-height ergonomics."""
    out = []
    if layout.mirror is not None:
        m = layout.mirror
        if m.gap_to_wires <= MIRROR_MIN_GAP:
            out.append(
                DrcViolation(
                    rule_id="MIRROR-GAP",
                    severity=ERROR,
                    subject="mirror",
                    measured=_um(m.gap_to_wires),
                    limit=_um(MIRROR_MIN_GAP),
                    message=(
                        f"gap {_um(m.gap_to_wires)} um between coating and wires "
                        "risks shorting; need more than 10 um"
                    ),
                )
            )
        region = layout.mirror_region
        if region is not None and region.area < MIRROR_MIN_AREA:
            out.append(
                DrcViolation(
                    rule_id="MIRROR-AREA",
                    severity=WARNING,
                    subject="mirror",
                    measured=f"{region.area * 1e4:.6g}",
                    limit=f"{MIRROR_MIN_AREA * 1e4:.6g}",
                    message=(
                        f"mirror area {region.area * 1e4:.3g} cm^2 is under the "
                        "5 cm^2 working size for a mirror-MOT"
                    ),
                )
            )
        if m.coating_height > HARD_HEIGHT_CAP:
            out.append(
                DrcViolation(
                    rule_id="STRUCTURE-HEIGHT",
                    severity=ERROR,
                    subject="mirror",
                    measured=_um(m.coating_height),
                    limit=_um(HARD_HEIGHT_CAP),
                    message="mirror coating exceeds the 5 um structure ceiling",
                )
            )
    sub = layout.substrate.extent
    for pad in layout.pads:
        margin = min(
            pad.region.xmin - sub.xmin,
            sub.xmax - pad.region.xmax,
            pad.region.ymin - sub.ymin,
            sub.ymax - pad.region.ymax,
        )
        if margin < PAD_EDGE_CLEARANCE:
            out.append(
                DrcViolation(
                    rule_id="PAD-EDGE",
                    severity=WARNING,
                    subject=pad.pad_id,
                    measured=f"{margin * 1e3:.6g}",
                    limit=f"{PAD_EDGE_CLEARANCE * 1e3:.6g}",
                    message=(
                        f"pad {pad.pad_id!r} sits {margin * 1e3:.3g} mm from the "
                        "substrate edge; keep bonding pads at least 1 mm in"
                    ),
                )
            )
    for p in layout.paths:
        if p.height > HARD_HEIGHT_CAP:
            out.append(
                DrcViolation(
                    rule_id="STRUCTURE-HEIGHT",
                    severity=ERROR,
                    subject=p.path_id,
                    measured=_um(p.height),
                    limit=_um(HARD_HEIGHT_CAP),
                    message=f"wire height {_um(p.height)} um exceeds the 5 um ceiling",
                )
            )
    return out


def run_drc(layout: ChipLayout, technique: str | None = None) -> list[DrcViolation]:
    """Full check suite; None technique means per-path recommendation."""
    out = []
    out.extend(check_current_density(layout))
    if technique is not None:
        out.extend(check_feature_rules(layout, technique))
    else:
        techniques: dict[str, str] = {}
        for p in layout.paths:
            try:
                tech = recommend_technique(p.width, p.height)
            except InfeasibleDimensions as exc:
                out.append(
                    DrcViolation(
                        rule_id="TECH-INFEASIBLE",
                        severity=ERROR,
                        subject=p.path_id,
                        measured=_um(p.height),
                        limit=_um(HARD_HEIGHT_CAP),
                        message=str(exc),
                    )
                )
                continue
            techniques[p.path_id] = tech
            single = ChipLayout(substrate=layout.substrate, paths=(p,), bias=layout.bias)
            out.extend(check_feature_rules(single, tech))
        # Spacing between paths fabricated by different techniques is held
        # to the stricter of the two floors.
        for (a, b), gap in sorted(_pair_gaps(layout).items()):
            if a not in techniques or b not in techniques:
                continue
            floor = max(
                TECHNIQUES[techniques[a]].min_spacing, TECHNIQUES[techniques[b]].min_spacing
            )
            if gap < floor:
                out.append(
                    DrcViolation(
                        rule_id="FEATURE-SPACING",
                        severity=ERROR,
                        subject=f"{a}+{b}",
                        measured=_um(gap),
                        limit=_um(floor),
                        message=(
                            f"gap {_um(gap)} um between {a!r} and {b!r} is below "
                            f"the required minimum {_um(floor)} um"
                        ),
                    )
                )
    out.extend(mirror_lint(layout))
    for g in validate_geometry(layout):
        out.append(
            DrcViolation(
                rule_id="GEOMETRY-SHORT" if g.kind == "short" else "GEOMETRY-SELF",
                severity=ERROR,
                subject="+".join(g.subjects),
                measured=_um(g.distance),
                limit=_um(g.limit),
                message=g.message,
            )
        )
    return sort_violations(out)


def sort_violations(violations: list[DrcViolation]) -> list[DrcViolation]:
    return sorted(violations, key=lambda v: (v.rule_id, v.subject))


def format_report(violations: list[DrcViolation]) -> str:
    """Tab-separated lines: rule, severity, subject, measured, limit, message."""
    return "".join(v.line() + "\n" for v in sort_violations(violations))

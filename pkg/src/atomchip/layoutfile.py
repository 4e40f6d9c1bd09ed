"""Layout text format.

One statement per line, `#` starts a comment. Lengths are micrometers
(``um`` suffix), currents amperes (``A``), bias fields gauss, arc angles
degrees::

    substrate material=sapphire size=30000x30000um thickness=430um
    wire id=guide width=10um height=1um current=1A points=(-20000,0) (20000,0)
    arc id=loop width=2um height=1.5um current=1A center=(0,0) radius=10um from=0 to=360
    bias bx=0 by=20 bz=0
    mirror gap=15um
    pad id=p1 at=(-14000,0) size=2000x2000um wire=guide

Repeated ``wire``/``arc`` statements sharing an id extend one path: the
pieces must chain end-to-start in document order and must repeat the same
cross-section and current. Unknown statements or keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LayoutError
from .layout import (
    Arc,
    BiasField,
    ChipLayout,
    MirrorSpec,
    PadSpec,
    Polyline,
    Rect,
    SubstrateSpec,
    WirePath,
)
from .units import fmt_quantity, gauss_to_tesla, tesla_to_gauss, um_to_m, m_to_um

_KEYS = {
    "substrate": {"material", "size", "thickness"},
    "wire": {"id", "width", "height", "current", "points"},
    "arc": {"id", "width", "height", "current", "center", "radius", "from", "to"},
    "bias": {"bx", "by", "bz"},
    "mirror": {"gap", "size", "at", "coating"},
    "pad": {"id", "at", "size", "wire"},
}


def _fail(line: int, msg: str) -> None:
    raise LayoutError(msg, line=line)


def _split_kv(tokens: list[str], line: int) -> dict[str, str]:
    """Turn ['k=v', ...] into a dict; bare tokens after points= join it."""
    out: dict[str, str] = {}
    tail_key: str | None = None
    for tok in tokens:
        if "=" in tok:
            key, _, value = tok.partition("=")
            if not key or not value:
                _fail(line, f"malformed token {tok!r}")
            if key in out:
                _fail(line, f"duplicate key {key!r}")
            out[key] = value
            tail_key = key if key == "points" else None
        elif tail_key == "points":
            out["points"] += " " + tok
        else:
            _fail(line, f"unexpected token {tok!r}")
    return out


def _number(text: str, line: int, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        _fail(line, f"bad {what} {text!r}")


def _length_um(text: str, line: int, what: str) -> float:
    if not text.endswith("um"):
        _fail(line, f"{what} must carry a um suffix, got {text!r}")
    return um_to_m(_number(text[:-2], line, what))


def _current_a(text: str, line: int) -> float:
    if not text.endswith("A"):
        _fail(line, f"current must carry an A suffix, got {text!r}")
    return _number(text[:-1], line, "current")


def _pair(text: str, line: int, what: str) -> tuple[float, float]:
    if not (text.startswith("(") and text.endswith(")")):
        _fail(line, f"{what} must look like (x,y), got {text!r}")
    parts = text[1:-1].split(",")
    if len(parts) != 2:
        _fail(line, f"{what} must have two coordinates, got {text!r}")
    return (
        um_to_m(_number(parts[0], line, what)),
        um_to_m(_number(parts[1], line, what)),
    )


def _size_um(text: str, line: int, what: str) -> tuple[float, float]:
    if not text.endswith("um"):
        _fail(line, f"{what} must carry a um suffix, got {text!r}")
    parts = text[:-2].split("x")
    if len(parts) != 2:
        _fail(line, f"{what} must look like <w>x<h>um, got {text!r}")
    return (
        um_to_m(_number(parts[0], line, what)),
        um_to_m(_number(parts[1], line, what)),
    )


def _require(kv: dict[str, str], keys: set[str], kind: str, line: int) -> None:
    allowed = _KEYS[kind]
    for k in kv:
        if k not in allowed:
            _fail(line, f"unknown key {k!r} for {kind}")
    for k in keys:
        if k not in kv:
            _fail(line, f"{kind} is missing {k}=")


@dataclass
class _PathBuilder:
    first_line: int
    width: float
    height: float
    current: float
    elements: list = field(default_factory=list)


def parse_layout(text: str) -> ChipLayout:
    """Parse a layout document; raises LayoutError with a line number."""
    substrate: SubstrateSpec | None = None
    bias: BiasField | None = None
    mirror: MirrorSpec | None = None
    pads: list[PadSpec] = []
    builders: dict[str, _PathBuilder] = {}
    order: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind not in _KEYS:
            _fail(lineno, f"unknown statement {kind!r}")
        kv = _split_kv(args, lineno)

        if kind == "substrate":
            _require(kv, {"material", "size", "thickness"}, kind, lineno)
            if substrate is not None:
                _fail(lineno, "duplicate substrate statement")
            w, h = _size_um(kv["size"], lineno, "size")
            substrate = SubstrateSpec(
                material=kv["material"],
                extent=Rect(0.0, 0.0, w, h),
                thickness=_length_um(kv["thickness"], lineno, "thickness"),
            )
        elif kind in ("wire", "arc"):
            shared = {"id", "width", "height", "current"}
            own = {"points"} if kind == "wire" else {"center", "radius", "from", "to"}
            _require(kv, shared | own, kind, lineno)
            pid = kv["id"]
            width = _length_um(kv["width"], lineno, "width")
            height = _length_um(kv["height"], lineno, "height")
            current = _current_a(kv["current"], lineno)
            if kind == "wire":
                pts = tuple(
                    _pair(tok, lineno, "points") for tok in kv["points"].split()
                )
                try:
                    element = Polyline(pts)
                except LayoutError as exc:
                    _fail(lineno, str(exc))
            else:
                element = Arc(
                    center=_pair(kv["center"], lineno, "center"),
                    radius=_length_um(kv["radius"], lineno, "radius"),
                    start_deg=_number(kv["from"], lineno, "from"),
                    end_deg=_number(kv["to"], lineno, "to"),
                )
            if pid in builders:
                b = builders[pid]
                if (width, height, current) != (b.width, b.height, b.current):
                    _fail(
                        lineno,
                        f"path {pid!r} continuation changes width/height/current",
                    )
                b.elements.append(element)
            else:
                builders[pid] = _PathBuilder(
                    first_line=lineno,
                    width=width,
                    height=height,
                    current=current,
                    elements=[element],
                )
                order.append(pid)
        elif kind == "bias":
            _require(kv, set(), kind, lineno)
            if bias is not None:
                _fail(lineno, "duplicate bias statement")
            bias = BiasField(
                bx=gauss_to_tesla(_number(kv.get("bx", "0"), lineno, "bx")),
                by=gauss_to_tesla(_number(kv.get("by", "0"), lineno, "by")),
                bz=gauss_to_tesla(_number(kv.get("bz", "0"), lineno, "bz")),
            )
        elif kind == "mirror":
            _require(kv, {"gap"}, kind, lineno)
            if mirror is not None:
                _fail(lineno, "duplicate mirror statement")
            region = None
            if ("size" in kv) != ("at" in kv):
                _fail(lineno, "mirror size= and at= must appear together")
            if "size" in kv:
                w, h = _size_um(kv["size"], lineno, "size")
                cx, cy = _pair(kv["at"], lineno, "at")
                region = Rect(cx, cy, w, h)
            mirror = MirrorSpec(
                gap_to_wires=_length_um(kv["gap"], lineno, "gap"),
                region=region,
                coating_height=(
                    _length_um(kv["coating"], lineno, "coating") if "coating" in kv else 0.0
                ),
            )
        elif kind == "pad":
            _require(kv, {"id", "at", "size", "wire"}, kind, lineno)
            cx, cy = _pair(kv["at"], lineno, "at")
            w, h = _size_um(kv["size"], lineno, "size")
            pads.append(
                PadSpec(pad_id=kv["id"], region=Rect(cx, cy, w, h), wire_id=kv["wire"])
            )

    if substrate is None:
        raise LayoutError("document has no substrate statement")

    paths = []
    for pid in order:
        b = builders[pid]
        try:
            paths.append(
                WirePath(
                    path_id=pid,
                    width=b.width,
                    height=b.height,
                    current=b.current,
                    elements=tuple(b.elements),
                )
            )
        except LayoutError as exc:
            _fail(b.first_line, str(exc))

    return ChipLayout(
        substrate=substrate,
        paths=tuple(paths),
        bias=bias if bias is not None else BiasField(),
        mirror=mirror,
        pads=tuple(pads),
    )


def _fmt_um(value_m: float) -> str:
    return fmt_quantity(m_to_um(value_m))


def _fmt_pair(point: tuple[float, float]) -> str:
    return f"({_fmt_um(point[0])},{_fmt_um(point[1])})"


def serialize_layout(layout: ChipLayout) -> str:
    """Render a layout document; parse(serialize(L)) is stable (see units)."""
    lines = [f"# {note}" for note in layout.notes]
    sub = layout.substrate
    lines.append(
        f"substrate material={sub.material} "
        f"size={_fmt_um(sub.extent.width)}x{_fmt_um(sub.extent.height)}um "
        f"thickness={_fmt_um(sub.thickness)}um"
    )
    for p in layout.paths:
        attrs = (
            f"id={p.path_id} width={_fmt_um(p.width)}um "
            f"height={_fmt_um(p.height)}um current={fmt_quantity(p.current)}A"
        )
        for el in p.elements:
            if isinstance(el, Polyline):
                pts = " ".join(_fmt_pair(pt) for pt in el.points)
                lines.append(f"wire {attrs} points={pts}")
            else:
                lines.append(
                    f"arc {attrs} center={_fmt_pair(el.center)} "
                    f"radius={_fmt_um(el.radius)}um "
                    f"from={fmt_quantity(el.start_deg)} to={fmt_quantity(el.end_deg)}"
                )
    if layout.bias != BiasField():
        lines.append(
            f"bias bx={fmt_quantity(tesla_to_gauss(layout.bias.bx))} "
            f"by={fmt_quantity(tesla_to_gauss(layout.bias.by))} "
            f"bz={fmt_quantity(tesla_to_gauss(layout.bias.bz))}"
        )
    if layout.mirror is not None:
        m = layout.mirror
        parts = [f"mirror gap={_fmt_um(m.gap_to_wires)}um"]
        if m.region is not None:
            parts.append(f"size={_fmt_um(m.region.width)}x{_fmt_um(m.region.height)}um")
            parts.append(f"at={_fmt_pair((m.region.cx, m.region.cy))}")
        if m.coating_height != 0.0:
            parts.append(f"coating={_fmt_um(m.coating_height)}um")
        lines.append(" ".join(parts))
    for pad in layout.pads:
        lines.append(
            f"pad id={pad.pad_id} at={_fmt_pair((pad.region.cx, pad.region.cy))} "
            f"size={_fmt_um(pad.region.width)}x{_fmt_um(pad.region.height)}um "
            f"wire={pad.wire_id}"
        )
    return "\n".join(lines) + "\n"

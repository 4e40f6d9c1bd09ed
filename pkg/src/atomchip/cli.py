"""Command-line front end.

Exit codes: 0 success, 1 input error (unparsable layout, bad flags, I/O),
2 analysis-negative (no trap found; DRC errors; infeasible dimensions).
All commands are deterministic for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import drc as drc_mod
from .errors import InfeasibleDimensions, LayoutError, NoTrapFound, NotAMinimum, SeedInsideWire
from .fields import GridSpec, LayoutField, field_grid
from .layout import ChipLayout
from .layoutfile import parse_layout, serialize_layout
from .patterns import (
    IoffeParams,
    SplitterParams,
    gen_five_wire_splitter,
    gen_side_guide,
    gen_u_trap,
    gen_wl_ioffe,
    wl_ioffe_paper_fixture,
)
from .recipes import render_recipe
from .trap import (
    SPECIES,
    MinimizeOptions,
    characterize_trap,
    find_minimum,
    render_report,
    report_keyvalues,
)
from .units import parse_current, parse_field, parse_length

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEGATIVE = 2


def _load_layout(path: str) -> ChipLayout:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_layout(fh.read())
    except OSError as exc:
        raise LayoutError(f"cannot read {path}: {exc}") from exc


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _species(name: str):
    key = name.lower().replace("-", "").replace("_", "")
    aliases = {"cs": "cesium", "rb87": "rubidium87", "rb": "rubidium87"}
    key = aliases.get(key, key)
    if key not in SPECIES:
        raise LayoutError(f"unknown species {name!r}; expected one of {sorted(SPECIES)}")
    return SPECIES[key]


def _parse_triplet(text: str, what: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise LayoutError(f"{what} needs three comma-separated values, got {text!r}")
    return tuple(parse_length(p) for p in parts)  # type: ignore[return-value]


def _parse_grid(text: str) -> GridSpec:
    """Grid flag: 'x0:x1:nx,y0:y1:ny,z0:z1:nz' in micrometers."""
    axes = text.split(",")
    if len(axes) != 3:
        raise LayoutError(f"grid needs three axis specs, got {text!r}")
    starts, stops, counts = [], [], []
    for ax in axes:
        bits = ax.split(":")
        if len(bits) != 3:
            raise LayoutError(f"axis spec must be start:stop:count, got {ax!r}")
        starts.append(parse_length(bits[0]))
        stops.append(parse_length(bits[1]))
        try:
            counts.append(int(bits[2]))
        except ValueError as exc:
            raise LayoutError(f"bad grid count in {ax!r}") from exc
    return GridSpec(tuple(starts), tuple(stops), tuple(counts))


def _coarse_seed(layout: ChipLayout, box: GridSpec | None) -> np.ndarray:
    """Minimum-|B| point of a coarse grid scan, the default seed."""
    if box is None:
        xs0 = ys0 = np.inf
        xs1 = ys1 = -np.inf
        for p in layout.paths:
            x0, y0, x1, y1 = p.bounds()
            xs0, ys0 = min(xs0, x0), min(ys0, y0)
            xs1, ys1 = max(xs1, x1), max(ys1, y1)
        span = max(xs1 - xs0, ys1 - ys0)
        zmax = max(3e-4, span / 2)
        box = GridSpec(
            (xs0 - 0.05 * span, ys0 - 0.05 * span, 1e-6),
            (xs1 + 0.05 * span, ys1 + 0.05 * span, zmax),
            (21, 21, 21),
        )
    field = LayoutField(layout)
    pts = box.points()
    b, clear = field.raw(pts)
    mag = np.linalg.norm(b, axis=1)
    mag[clear <= 0] = np.inf
    return pts[int(np.argmin(mag))]


def cmd_analyze(args) -> int:
    layout = _load_layout(args.layout)
    species = _species(args.species)
    if args.seed is not None:
        seed = np.array(_parse_triplet(args.seed, "--seed"))
    else:
        seed = _coarse_seed(layout, _parse_grid(args.seed_box) if args.seed_box else None)
    opts = MinimizeOptions(include_gravity=args.gravity, species=species)
    try:
        trap = find_minimum(layout, seed, opts)
        report = characterize_trap(layout, trap, species=species)
    except (NoTrapFound, SeedInsideWire) as exc:
        print(f"no trap found: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except NotAMinimum as exc:
        print(f"stationary point is not a minimum: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    if args.json:
        text = "".join(f"{k}={v}\n" for k, v in report_keyvalues(report).items())
    else:
        text = render_report(report)
    _write_out(text, args.out)
    return EXIT_OK


def cmd_drc(args) -> int:
    layout = _load_layout(args.layout)
    technique = args.technique.replace("-", "_") if args.technique else None
    if technique is not None and technique not in drc_mod.TECHNIQUES:
        raise LayoutError(
            f"unknown technique {args.technique!r}; expected one of {sorted(drc_mod.TECHNIQUES)}"
        )
    violations = drc_mod.run_drc(layout, technique)
    lines = [drc_mod.format_report(violations)]
    if not args.json:
        plan = drc_mod.bond_plan(layout)
        if plan:
            lines.append("pad\twire\tcurrent_A\tbonds\n")
            lines.extend(
                f"{b.pad_id}\t{b.wire_id}\t{b.current:.6g}\t{b.bonds}\n" for b in plan
            )
        lines.append(drc_mod.power_report(layout).render())
        errors = sum(1 for v in violations if v.severity == drc_mod.ERROR)
        warnings = len(violations) - errors
        lines.append(f"summary\terrors={errors}\twarnings={warnings}\n")
    _write_out("".join(lines), args.out)
    if any(v.severity == drc_mod.ERROR for v in violations):
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_fieldmap(args) -> int:
    layout = _load_layout(args.layout)
    spec = _parse_grid(args.grid)
    grid = field_grid(layout, spec)
    _write_out(grid.to_csv(), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    name = args.pattern.replace("-", "_")
    if name == "u_trap":
        layout = gen_u_trap(
            width=parse_length(args.width) if args.width else 300e-6,
            height=parse_length(args.height) if args.height else 1e-6,
            current=parse_current(args.current) if args.current else 2.0,
        )
    elif name == "side_guide":
        layout = gen_side_guide(
            current=parse_current(args.current) if args.current else 1.0,
            bias=parse_field(args.bias) if args.bias else 2e-3,
        )
    elif name == "ioffe":
        if args.paper_defaults:
            layout = wl_ioffe_paper_fixture()
        else:
            layout = gen_wl_ioffe(
                IoffeParams(
                    r_inner=parse_length(args.r_inner) if args.r_inner else 10e-6,
                    r_outer=parse_length(args.r_outer) if args.r_outer else 15e-6,
                    current=parse_current(args.current) if args.current else 1.0,
                )
            )
    elif name == "splitter":
        layout = gen_five_wire_splitter(
            SplitterParams(
                wire_count=args.count if args.count else 5,
                width=parse_length(args.width) if args.width else 3e-6,
                height=parse_length(args.height) if args.height else 4e-6,
                spacing=parse_length(args.spacing) if args.spacing else 3e-6,
                length=parse_length(args.length) if args.length else 1e-3,
            )
        )
    else:
        raise LayoutError(
            f"unknown pattern {args.pattern!r}; expected u-trap, side-guide, ioffe or splitter"
        )
    _write_out(serialize_layout(layout), args.out)
    return EXIT_OK


def cmd_recipe(args) -> int:
    technique = args.technique.replace("-", "_")
    if technique not in drc_mod.TECHNIQUES:
        raise LayoutError(
            f"unknown technique {args.technique!r}; expected one of {sorted(drc_mod.TECHNIQUES)}"
        )
    _write_out(render_recipe(technique), args.out)
    return EXIT_OK


def cmd_recommend(args) -> int:
    width = parse_length(args.width)
    height = parse_length(args.height)
    try:
        technique = drc_mod.recommend_technique(width, height)
    except InfeasibleDimensions as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    spec = drc_mod.TECHNIQUES[technique]
    _write_out(f"{technique}\tmask={spec.mask}\t{spec.notes}\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="atomchip",
        description="design and verification tools for atom-chip wire layouts",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_layout=True):
        if needs_layout:
            p.add_argument("--layout", required=True, help="layout file")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="locate and characterize a trap")
    common(p)
    p.add_argument("--species", default="cesium")
    p.add_argument("--seed", default=None, help="seed point x,y,z (um)")
    p.add_argument("--seed-box", default=None, help="coarse-scan box x0:x1:nx,... (um)")
    p.add_argument("--gravity", action="store_true", help="include gravitational sag")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("drc", help="design-rule checks")
    common(p)
    p.add_argument("--technique", default=None, help="force one fabrication technique")
    p.set_defaults(fn=cmd_drc)

    p = sub.add_parser("fieldmap", help="sample |B| on a grid to CSV")
    common(p)
    p.add_argument(
        "--grid",
        required=True,
        help="x0:x1:nx,y0:y1:ny,z0:z1:nz in um; write --grid=-5:5:11,... for negative starts",
    )
    p.set_defaults(fn=cmd_fieldmap)

    p = sub.add_parser("generate", help="emit a canonical pattern layout")
    common(p, needs_layout=False)
    p.add_argument("pattern", help="u-trap | side-guide | ioffe | splitter")
    p.add_argument("--paper-defaults", action="store_true")
    p.add_argument("--width", default=None)
    p.add_argument("--height", default=None)
    p.add_argument("--current", default=None)
    p.add_argument("--bias", default=None)
    p.add_argument("--r-inner", default=None)
    p.add_argument("--r-outer", default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--spacing", default=None)
    p.add_argument("--length", default=None)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("recipe", help="print a fabrication process traveler")
    common(p, needs_layout=False)
    p.add_argument("--technique", required=True)
    p.set_defaults(fn=cmd_recipe)

    p = sub.add_parser("recommend", help="pick a technique for a cross-section")
    common(p, needs_layout=False)
    p.add_argument("--width", required=True)
    p.add_argument("--height", required=True)
    p.set_defaults(fn=cmd_recommend)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (LayoutError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Design and verification tools for atom-chip microwire magnetic traps."""

from .drc import (
    TECHNIQUES,
    TechniqueSpec,
    bond_plan,
    format_report,
    mirror_lint,
    power_report,
    recommend_technique,
    run_drc,
)
from .errors import (
    EvaluationTooCloseToWire,
    InfeasibleDimensions,
    LayoutError,
    NoTrapFound,
    NotAMinimum,
    SeedInsideWire,
    ZeroFieldNondifferentiable,
)
from .fields import (
    FieldGrid,
    GridSpec,
    LayoutField,
    SyntheticField,
    as_field_source,
    field_at,
    field_grid,
    gradient_of_magnitude,
    hessian_of_magnitude,
    jacobian_at,
    segment_field,
)
from .layout import (
    Arc,
    BiasField,
    ChipLayout,
    GeometryFinding,
    MirrorSpec,
    PadSpec,
    Polyline,
    Rect,
    SubstrateSpec,
    WirePath,
    discretize,
    scale_layout,
    validate_geometry,
)
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
from .recipes import emit_process_recipe, render_recipe
from .trap import (
    CESIUM,
    RUBIDIUM87,
    SPECIES,
    AtomSpecies,
    CharacterizeOptions,
    MinimizeOptions,
    TrapPoint,
    TrapReport,
    characterize_trap,
    find_minimum,
    lamb_dicke,
    render_report,
    report_keyvalues,
    species_threshold_curvature,
)

__version__ = "0.1.0"

__all__ = [
    "TECHNIQUES",
    "TechniqueSpec",
    "bond_plan",
    "format_report",
    "mirror_lint",
    "power_report",
    "recommend_technique",
    "run_drc",
    "EvaluationTooCloseToWire",
    "InfeasibleDimensions",
    "LayoutError",
    "NoTrapFound",
    "NotAMinimum",
    "SeedInsideWire",
    "ZeroFieldNondifferentiable",
    "FieldGrid",
    "GridSpec",
    "LayoutField",
    "SyntheticField",
    "as_field_source",
    "field_at",
    "field_grid",
    "gradient_of_magnitude",
    "hessian_of_magnitude",
    "jacobian_at",
    "segment_field",
    "Arc",
    "BiasField",
    "ChipLayout",
    "GeometryFinding",
    "MirrorSpec",
    "PadSpec",
    "Polyline",
    "Rect",
    "SubstrateSpec",
    "WirePath",
    "discretize",
    "scale_layout",
    "validate_geometry",
    "parse_layout",
    "serialize_layout",
    "IoffeParams",
    "SplitterParams",
    "gen_five_wire_splitter",
    "gen_side_guide",
    "gen_u_trap",
    "gen_wl_ioffe",
    "wl_ioffe_paper_fixture",
    "emit_process_recipe",
    "render_recipe",
    "CESIUM",
    "RUBIDIUM87",
    "SPECIES",
    "AtomSpecies",
    "CharacterizeOptions",
    "MinimizeOptions",
    "TrapPoint",
    "TrapReport",
    "characterize_trap",
    "find_minimum",
    "lamb_dicke",
    "render_report",
    "report_keyvalues",
    "species_threshold_curvature",
    "__version__",
]

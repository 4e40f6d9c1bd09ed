"""Cleanroom process travelers for each fabrication technique.

Every numeric figure printed here is one that has been run at the bench:
times, temperatures, spin speeds and doses are reproduced as used, not
rescaled or interpolated. Steps carry the same figures in machine-readable
``params`` (seconds, celsius, rpm, nanometres) so tooling does not have to
parse the display strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class RecipeStep:
    action: str
    display: str
    params: dict[str, float] = field(default_factory=dict)

    def line(self, index: int) -> str:
        return f"{index}. {self.action}: {self.display}"


_CLEAN = RecipeStep(
    action="clean",
    display="piranha clean, 10:1 sulfuric acid to hydrogen peroxide, 5 min at 100 C, rinse and dry",
    params={"duration_s": 300, "temperature_c": 100},
)
_OZONE = RecipeStep(
    action="ozone",
    display="ozone dry strip, 5 min at 65 C",
    params={"duration_s": 300, "temperature_c": 65},
)
_EVAPORATE = RecipeStep(
    action="evaporate",
    display="thermally evaporate 50 angstrom chromium adhesion layer, then gold to the wire height",
    params={"adhesion_thickness_nm": 5},
)
_POSITIVE_MASK = (
    RecipeStep(
        action="bake",
        display="dehydration bake, 5 min at 180 C",
        params={"duration_s": 300, "temperature_c": 180},
    ),
    RecipeStep(
        action="spin",
        display="spin photoresist at 5000 rpm for 50 s",
        params={"spin_rpm": 5000, "duration_s": 50},
    ),
    RecipeStep(
        action="bake",
        display="soft bake at 95 C for 2 min",
        params={"temperature_c": 95, "duration_s": 120},
    ),
    RecipeStep(
        action="expose",
        display="expose through the mask for 10 to 20 s at 16 mW/cm^2",
        params={"duration_s_min": 10, "duration_s_max": 20, "intensity_mw_cm2": 16},
    ),
    RecipeStep(
        action="develop",
        display="develop in AZ327 MIF for 30 s, rinse in deionized water",
        params={"duration_s": 30},
    ),
)
_STRIP = RecipeStep(action="strip", display="strip the remaining photoresist in acetone")

_WET_ETCH = (
    _CLEAN,
    _OZONE,
    _EVAPORATE,
    *_POSITIVE_MASK,
    RecipeStep(
        action="etch",
        display="etch the exposed gold in Gold Etchant TFA until the substrate clears",
    ),
    RecipeStep(action="etch", display="etch the exposed chromium in CR-7S"),
    _STRIP,
)

_ION_MILL = (
    _CLEAN,
    _OZONE,
    _EVAPORATE,
    *_POSITIVE_MASK,
    RecipeStep(
        action="mill",
        display="argon ion mill through the gold and chromium, monitoring substrate temperature",
    ),
    _STRIP,
)

_LIFT_OFF = (
    _CLEAN,
    RecipeStep(
        action="spin",
        display=(
            "spin image-reversal photoresist for 45 s at 5000 rpm "
            "(2000 rpm for the 1.5 um film)"
        ),
        params={"duration_s": 45, "spin_rpm": 5000, "spin_rpm_thick": 2000},
    ),
    RecipeStep(
        action="bake",
        display="bake for 45 s at 100 C",
        params={"duration_s": 45, "temperature_c": 100},
    ),
    RecipeStep(
        action="expose",
        display="expose through the mask for 10 s",
        params={"duration_s": 10},
    ),
    RecipeStep(
        action="bake",
        display="image-reversal bake for 45 s at 123 C",
        params={"duration_s": 45, "temperature_c": 123},
    ),
    RecipeStep(
        action="expose",
        display="flood expose without the mask for 2.1 min",
        params={"duration_s": 126},
    ),
    RecipeStep(
        action="develop",
        display="develop for 25 to 35 s, rinse in deionized water",
        params={"duration_s_min": 25, "duration_s_max": 35},
    ),
    _OZONE,
    _EVAPORATE,
    RecipeStep(
        action="lift_off",
        display="soak in heated acetone until the unwanted gold lifts off",
    ),
)

_ELECTROPLATING = (
    _CLEAN,
    _OZONE,
    RecipeStep(
        action="evaporate",
        display=(
            "evaporate the seed: 50 angstrom chromium, then a "
            "100 to 150 nm gold layer"
        ),
        params={"adhesion_thickness_nm": 5, "seed_nm_min": 100, "seed_nm_max": 150},
    ),
    RecipeStep(
        action="spin",
        display="spin thick positive photoresist to a 4 to 24 um film",
        params={"thickness_um_min": 4, "thickness_um_max": 24},
    ),
    RecipeStep(
        action="expose",
        display="expose through the mask for 60 s or longer",
        params={"duration_s_min": 60},
    ),
    RecipeStep(
        action="develop",
        display="develop in a 1:4 solution of AZ400K and water for a minute or more",
        params={"duration_s_min": 60},
    ),
    RecipeStep(
        action="ozone",
        display="ozone dry etch for 18 s at room temperature to clear resist residue",
        params={"duration_s": 18},
    ),
    RecipeStep(
        action="electroplate",
        display=(
            "electroplate in TG-25E at 60 C, 0.1 to 0.2 mA, "
            "10 to 30 minutes to the target height; expect 75% yield "
            "at +-0.5 um height accuracy"
        ),
        params={
            "temperature_c": 60,
            "current_ma_min": 0.1,
            "current_ma_max": 0.2,
            "duration_s_min": 600,
            "duration_s_max": 1800,
        },
    ),
    _STRIP,
    RecipeStep(
        action="etch",
        display="wet etch the gold seed layer, about 15 s",
        params={"duration_s": 15},
    ),
    RecipeStep(action="etch", display="wet etch the chromium adhesion layer"),
)

_RECIPES: dict[str, tuple[RecipeStep, ...]] = {
    "wet_etch": _WET_ETCH,
    "ion_mill": _ION_MILL,
    "lift_off": _LIFT_OFF,
    "electroplating": _ELECTROPLATING,
}

_TITLES = {
    "wet_etch": "wet etch (transparency mask, wide wires)",
    "ion_mill": "argon ion mill (chrome mask)",
    "lift_off": "image-reversal lift-off (chrome mask, narrow wires)",
    "electroplating": "gold electroplating onto an evaporated seed",
}


def emit_process_recipe(technique: str) -> tuple[RecipeStep, ...]:
    if technique not in _RECIPES:
        raise KeyError(f"unknown technique {technique!r}; expected one of {sorted(_RECIPES)}")
    return _RECIPES[technique]


def render_recipe(technique: str) -> str:
    steps = emit_process_recipe(technique)
    lines = [f"process: {technique} - {_TITLES[technique]}"]
    lines.extend(step.line(i) for i, step in enumerate(steps, start=1))
    return "\n".join(lines) + "\n"

from __future__ import annotations

import pytest

from atomchip import TECHNIQUES, emit_process_recipe, render_recipe
from tests.helpers import golden_text

GOLDEN = {
    "wet_etch": "recipe_wet_etch.txt",
    "ion_mill": "recipe_ion_mill.txt",
    "lift_off": "recipe_lift_off.txt",
    "electroplating": "recipe_electroplating.txt",
}


def test_rendered_recipes_match_golden():
    for technique, name in GOLDEN.items():
        assert render_recipe(technique) == golden_text(name)
        # byte-identical on repeat renders
        assert render_recipe(technique) == render_recipe(technique)


def test_every_technique_has_a_recipe():
    for technique in TECHNIQUES:
        steps = emit_process_recipe(technique)
        assert len(steps) >= 5
        for step in steps:
            assert step.action
            assert step.display
            assert isinstance(step.params, dict)


def test_render_numbers_steps_densely():
    for technique in TECHNIQUES:
        lines = [l for l in render_recipe(technique).splitlines() if l and l[0].isdigit()]
        assert len(lines) == len(emit_process_recipe(technique))
        for i, line in enumerate(lines, start=1):
            assert line.startswith(f"{i}. ")


def test_wet_etch_coat_and_bake_parameters():
    steps = emit_process_recipe("wet_etch")
    by_action = {}
    for s in steps:
        by_action.setdefault(s.action, []).append(s)
    (spin,) = by_action["spin"]
    assert spin.params["spin_rpm"] == 5000
    assert spin.params["duration_s"] == 50
    soft = [b for b in by_action["bake"] if b.params.get("temperature_c") == 95]
    assert soft and soft[0].params["duration_s"] == 120


def test_lift_off_image_reversal_sequence():
    steps = emit_process_recipe("lift_off")
    exposures = [s for s in steps if s.action == "expose"]
    # masked exposure, reversal bake, then unmasked flood, in that order
    assert [s.params["duration_s"] for s in exposures] == [10, 126]
    reversal = [s for s in steps if s.action == "bake" and s.params.get("temperature_c") == 123]
    assert reversal and reversal[0].params["duration_s"] == 45
    order = [steps.index(x) for x in (exposures[0], reversal[0], exposures[1])]
    assert order == sorted(order)
    assert steps[-1].action == "lift_off"


def test_electroplating_plate_parameters():
    steps = emit_process_recipe("electroplating")
    (plate,) = [s for s in steps if s.action == "electroplate"]
    assert plate.params["temperature_c"] == 60
    assert plate.params["current_ma_min"] == 0.1
    assert plate.params["current_ma_max"] == 0.2
    assert plate.params["duration_s_min"] == 600
    assert plate.params["duration_s_max"] == 1800
    text = render_recipe("electroplating")
    assert "75%" in text
    assert "0.5 um" in text or "+-0.5" in text


def test_unknown_technique_rejected():
    with pytest.raises(KeyError):
        emit_process_recipe("sputtering")
    with pytest.raises(KeyError):
        render_recipe("")

from __future__ import annotations

import pytest

from atomchip import cli, gen_side_guide, gen_u_trap, parse_layout, serialize_layout
from atomchip.layout import BiasField, ChipLayout, Polyline, Rect, SubstrateSpec, WirePath
from tests.helpers import golden_text


@pytest.fixture
def side_guide_file(tmp_path):
    path = tmp_path / "guide.layout"
    path.write_text(serialize_layout(gen_side_guide()), encoding="utf-8")
    return str(path)


@pytest.fixture
def hot_wire_file(tmp_path):
    wire = WirePath("w0", 3e-6, 2e-6, 1.0, (Polyline(((-5e-4, 0.0), (5e-4, 0.0))),))
    layout = ChipLayout(
        SubstrateSpec("sapphire", Rect(0.0, 0.0, 30e-3, 30e-3), 500e-6),
        (wire,),
        BiasField(0.0, 0.0, 0.0),
    )
    path = tmp_path / "hot.layout"
    path.write_text(serialize_layout(layout), encoding="utf-8")
    return str(path)


def test_analyze_reports_guide_height(side_guide_file, capsys):
    code = cli.main(["analyze", "--layout", side_guide_file, "--seed", "0,0,80"])
    out = capsys.readouterr().out
    assert code == 0
    assert "height_um" in out
    assert "converged: yes" in out


def test_analyze_json_keyvalues(side_guide_file, capsys):
    code = cli.main(["analyze", "--layout", side_guide_file, "--seed", "0,0,80", "--json"])
    out = capsys.readouterr().out
    assert code == 0
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert float(kv["height_um"]) == pytest.approx(100.48, rel=1e-3)
    assert kv["species"] == "cesium"
    assert kv["converged"] == "true"
    assert kv["quadrupole_like"] == "true"  # the guide bottoms at a field zero


def test_analyze_default_seed_comes_from_a_coarse_scan(side_guide_file, capsys):
    code = cli.main(["analyze", "--layout", side_guide_file, "--json"])
    out = capsys.readouterr().out
    assert code == 0
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert float(kv["height_um"]) == pytest.approx(100.48, rel=1e-3)


def test_analyze_species_alias(side_guide_file, capsys):
    code = cli.main(
        ["analyze", "--layout", side_guide_file, "--seed", "0,0,80", "--json", "--species", "rb87"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "species=rubidium87" in out


def test_analyze_without_a_trap_is_negative(tmp_path, capsys):
    # a bare straight wire with no bias has no field minimum off the wire
    wire = WirePath("w0", 3e-5, 1e-6, 1.0, (Polyline(((-5e-3, 0.0), (5e-3, 0.0))),))
    layout = ChipLayout(
        SubstrateSpec("aln", Rect(0.0, 0.0, 12e-3, 12e-3), 500e-6),
        (wire,),
        BiasField(0.0, 0.0, 0.0),
    )
    f = tmp_path / "bare.layout"
    f.write_text(serialize_layout(layout), encoding="utf-8")
    code = cli.main(["analyze", "--layout", str(f), "--seed", "0,100,100"])
    err = capsys.readouterr().err
    assert code == 2
    assert "no trap" in err


def test_analyze_unknown_species_is_input_error(side_guide_file, capsys):
    code = cli.main(["analyze", "--layout", side_guide_file, "--species", "unobtainium"])
    assert code == 1
    assert "unknown species" in capsys.readouterr().err


def test_drc_clean_layout_exits_zero(tmp_path, capsys):
    f = tmp_path / "u.layout"
    f.write_text(serialize_layout(gen_u_trap()), encoding="utf-8")
    code = cli.main(["drc", "--layout", str(f), "--technique", "wet-etch"])
    out = capsys.readouterr().out
    assert code == 0
    assert "summary\terrors=0" in out
    assert "path\tlength_mm\tR_ohm\tP_W\tV_V" in out
    assert "pad\twire\tcurrent_A\tbonds" in out


def test_drc_errors_exit_negative(hot_wire_file, capsys):
    code = cli.main(["drc", "--layout", hot_wire_file, "--technique", "lift_off"])
    out = capsys.readouterr().out
    assert code == 2
    assert "CURRENT-DENSITY" in out
    assert "FEATURE-HEIGHT" in out
    assert "summary\terrors=" in out


def test_drc_json_is_just_the_violation_table(hot_wire_file, capsys):
    code = cli.main(["drc", "--layout", hot_wire_file, "--technique", "lift_off", "--json"])
    out = capsys.readouterr().out
    assert code == 2
    for line in out.splitlines():
        assert len(line.split("\t")) == 6
    assert "summary" not in out


def test_drc_unknown_technique(side_guide_file, capsys):
    code = cli.main(["drc", "--layout", side_guide_file, "--technique", "sputtering"])
    assert code == 1
    assert "unknown technique" in capsys.readouterr().err


def test_fieldmap_csv(side_guide_file, capsys):
    code = cli.main(
        ["fieldmap", "--layout", side_guide_file, "--grid=-5:5:3,0:0:1,100:100:1"]
    )
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x_um,y_um,z_um,Bx_G,By_G,Bz_G,Bmag_G"
    assert len(lines) == 1 + 3


def test_fieldmap_bad_grid(side_guide_file, capsys):
    code = cli.main(["fieldmap", "--layout", side_guide_file, "--grid", "1:2"])
    assert code == 1
    assert "grid" in capsys.readouterr().err


def test_generate_all_patterns(tmp_path, capsys):
    for pattern in ("u-trap", "side-guide", "ioffe", "splitter"):
        out_file = tmp_path / f"{pattern}.layout"
        code = cli.main(["generate", pattern, "--out", str(out_file)])
        assert code == 0
        layout = parse_layout(out_file.read_text(encoding="utf-8"))
        assert layout.paths


def test_generate_paper_defaults_match_the_fixture(capsys):
    from atomchip import wl_ioffe_paper_fixture

    code = cli.main(["generate", "ioffe", "--paper-defaults"])
    out = capsys.readouterr().out
    assert code == 0
    assert out == serialize_layout(wl_ioffe_paper_fixture())


def test_generate_with_dimension_flags(capsys):
    code = cli.main(["generate", "u-trap", "--width", "200um", "--current", "1.5A"])
    out = capsys.readouterr().out
    assert code == 0
    layout = parse_layout(out)
    assert layout.paths[0].width == pytest.approx(200e-6)
    assert layout.paths[0].current == pytest.approx(1.5)


def test_generate_unknown_pattern(capsys):
    code = cli.main(["generate", "moebius"])
    assert code == 1
    assert "unknown pattern" in capsys.readouterr().err


def test_recipe_output_matches_library_text(capsys):
    code = cli.main(["recipe", "--technique", "lift-off"])
    out = capsys.readouterr().out
    assert code == 0
    assert out == golden_text("recipe_lift_off.txt")


def test_recipe_unknown_technique(capsys):
    code = cli.main(["recipe", "--technique", "origami"])
    assert code == 1


def test_recommend_table_via_cli(capsys):
    code = cli.main(["recommend", "--width", "50um", "--height", "0.5um"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("wet_etch\t")


def test_recommend_infeasible_is_negative(capsys):
    code = cli.main(["recommend", "--width", "10um", "--height", "6um"])
    err = capsys.readouterr().err
    assert code == 2
    assert "infeasible" in err


def test_recommend_bad_number(capsys):
    code = cli.main(["recommend", "--width", "wide", "--height", "1um"])
    assert code == 1


def test_missing_layout_file(capsys):
    code = cli.main(["drc", "--layout", "/nonexistent/x.layout"])
    assert code == 1
    assert "cannot read" in capsys.readouterr().err


def test_out_flag_writes_file(side_guide_file, tmp_path, capsys):
    target = tmp_path / "report.txt"
    code = cli.main(
        ["analyze", "--layout", side_guide_file, "--seed", "0,0,80", "--out", str(target)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    assert "height_um" in target.read_text(encoding="utf-8")

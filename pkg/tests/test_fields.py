from __future__ import annotations

import math

import numpy as np
import pytest

from atomchip import (
    Arc,
    BiasField,
    ChipLayout,
    EvaluationTooCloseToWire,
    GridSpec,
    LayoutField,
    Polyline,
    Rect,
    SubstrateSpec,
    SyntheticField,
    WirePath,
    ZeroFieldNondifferentiable,
    field_at,
    field_grid,
    gradient_of_magnitude,
    hessian_of_magnitude,
    jacobian_at,
    segment_field,
)

from helpers import fd_jacobian, random_layout, wire_dominated_point

MU0 = 4e-7 * math.pi


def _single_wire(elems, width=3e-6, height=1e-6, current=1.0, size=0.2, bias=(0.0, 0.0, 0.0)):
    return ChipLayout(
        SubstrateSpec("aln", Rect(0.0, 0.0, size, size), 500e-6),
        (WirePath("w", width, height, current, elems),),
        BiasField(*bias),
    )


def _midpoint_quadrature(a, b, current, p, n):
    """Brute-force Biot-Savart midpoint rule, the independent field oracle."""
    a, b, p = (np.asarray(v, dtype=float) for v in (a, b, p))
    ts = (np.arange(n) + 0.5) / n
    pts = a[None, :] + ts[:, None] * (b - a)[None, :]
    dl = (b - a) / n
    r = p[None, :] - pts
    rn = np.linalg.norm(r, axis=1)
    integrand = np.cross(np.broadcast_to(dl, r.shape), r) / rn[:, None] ** 3
    return 1e-7 * current * integrand.sum(axis=0)


def test_segment_field_matches_quadrature_oracle():
    rng = np.random.default_rng(20260815)
    worst = 0.0
    for _ in range(200):
        a = rng.uniform(-1e-3, 1e-3, 3)
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        b = a + 10 ** rng.uniform(-5, -3) * d
        current = rng.uniform(-2.0, 2.0)
        mid = 0.5 * (a + b)
        u = rng.normal(size=3)
        u /= np.linalg.norm(u)
        p = mid + np.linalg.norm(b - a) * 10 ** rng.uniform(-0.5, 1.0) * u
        analytic = segment_field(a, b, current, p)
        quad = _midpoint_quadrature(a, b, current, p, 10_000)
        worst = max(worst, np.linalg.norm(quad - analytic) / np.linalg.norm(analytic))
    assert worst < 1e-6


def test_segment_field_edge_cases():
    assert np.allclose(segment_field((0, 0, 0), (0, 0, 0), 1.0, (1e-3, 0, 0)), 0.0)
    assert np.allclose(segment_field((0, 0, 0), (1e-3, 0, 0), 0.0, (0, 1e-3, 0)), 0.0)
    with pytest.raises(EvaluationTooCloseToWire):
        segment_field((0, 0, 0), (1e-3, 0, 0), 1.0, (5e-4, 1e-6, 0), exclusion_radius=2e-6)


def test_long_straight_wire_gives_two_gauss_at_one_millimeter():
    lay = _single_wire((Polyline(((-0.05, 0.0), (0.05, 0.0))),))
    b = field_at(lay, (0.0, 1e-3, 0.5e-6))
    expect = MU0 * 1.0 / (2 * math.pi * 1e-3)  # 2 G exactly
    assert expect == pytest.approx(2e-4, rel=1e-12)
    assert np.linalg.norm(b) == pytest.approx(expect, rel=1e-3)
    # +x current, point at +y in the filament plane: x-hat cross y-hat = +z
    assert b[2] > 0
    assert abs(b[0]) < 1e-9


def test_loop_center_field():
    lay = _single_wire((Arc((0.0, 0.0), 1e-3, 0.0, 360.0),), size=0.02)
    # the filament plane sits at half the wire height
    b = field_at(lay, (0.0, 0.0, 0.5e-6))
    expect = MU0 * 1.0 / (2 * 1e-3)
    assert np.linalg.norm(b) == pytest.approx(expect, rel=1e-3)
    assert b[2] == pytest.approx(np.linalg.norm(b))  # ccw arc points +z


def test_on_axis_loop_profile_matches_closed_form():
    r = 1e-3
    lay = _single_wire((Arc((0.0, 0.0), r, 0.0, 360.0),), size=0.02)
    for z in (2e-4, 1e-3, 3e-3):
        b = field_at(lay, (0.0, 0.0, 0.5e-6 + z))
        expect = MU0 * r**2 / (2 * (r**2 + z**2) ** 1.5)
        assert np.linalg.norm(b) == pytest.approx(expect, rel=2e-4)


def test_field_superposition_and_current_linearity():
    rng = np.random.default_rng(21)
    a = _single_wire((Polyline(((-1e-3, -1e-4), (1e-3, -1e-4))),))
    b = _single_wire((Polyline(((-1e-3, 1e-4), (1e-3, 1e-4))),))
    both = ChipLayout(
        a.substrate,
        (a.paths[0], WirePath("w2", 3e-6, 1e-6, 1.0, b.paths[0].elements)),
        a.bias,
    )
    for _ in range(20):
        p = np.array([rng.uniform(-5e-4, 5e-4), rng.uniform(-5e-4, 5e-4), 10 ** rng.uniform(-4, -3)])
        combined = field_at(both, p)
        assert np.allclose(combined, field_at(a, p) + field_at(b, p), rtol=1e-12, atol=1e-20)
    # doubling the current doubles the field
    doubled = _single_wire((Polyline(((-1e-3, -1e-4), (1e-3, -1e-4))),), current=2.0)
    p = np.array([0.0, 2e-4, 1e-4])
    assert np.allclose(field_at(doubled, p), 2 * field_at(a, p), rtol=1e-12)


def test_bias_adds_uniformly():
    lay = _single_wire((Polyline(((-1e-3, 0.0), (1e-3, 0.0))),), bias=(1e-4, -2e-4, 5e-4))
    bare = _single_wire((Polyline(((-1e-3, 0.0), (1e-3, 0.0))),))
    p = (1e-4, 3e-4, 2e-4)
    assert np.allclose(field_at(lay, p), field_at(bare, p) + np.array([1e-4, -2e-4, 5e-4]))


def test_layout_field_raw_reports_clearance():
    lay = _single_wire((Polyline(((-1e-3, 0.0), (1e-3, 0.0))),), width=3e-6, height=1e-6)
    src = LayoutField(lay)
    pts = np.array([[0.0, 0.0, 1e-4], [0.0, 0.0, 0.5e-6 + 1e-7]])
    _, clearance = src.raw(pts)
    # distance to the filament at z=0.5um minus the cross-section guard
    assert clearance[0] == pytest.approx(1e-4 - 0.5e-6 - (1.5e-6 + 1e-9), rel=1e-6)
    assert clearance[1] < 0


def test_field_batch_matches_field_at():
    rng = np.random.default_rng(22)
    lay = random_layout(rng)
    src = LayoutField(lay)
    pts = np.column_stack(
        [rng.uniform(-2e-3, 2e-3, 10), rng.uniform(-2e-3, 2e-3, 10), 10 ** rng.uniform(-4, -3, 10)]
    )
    batch = src.field_batch(pts)
    for i, p in enumerate(pts):
        assert np.allclose(batch[i], field_at(src, p), rtol=1e-13, atol=0)


def test_cross_section_subdivision_converges():
    # a fat wire evaluated close up: subdividing the cross-section moves the
    # answer, and 4x4 stays near 8x8 (convergence in the filament model)
    elems = (Polyline(((-2e-3, 0.0), (2e-3, 0.0))),)
    lay = _single_wire(elems, width=1e-4, height=5e-6)
    p = (0.0, 1.2e-4, 5e-5)
    b1 = np.linalg.norm(field_at(LayoutField(lay, subdivide=1), p))
    b4 = np.linalg.norm(field_at(LayoutField(lay, subdivide=4), p))
    b8 = np.linalg.norm(field_at(LayoutField(lay, subdivide=8), p))
    assert abs(b4 - b1) > abs(b8 - b4)
    assert b8 == pytest.approx(b4, rel=5e-3)
    with pytest.raises(ValueError):
        LayoutField(lay, subdivide=0)


def test_jacobian_matches_plain_stencil():
    rng = np.random.default_rng(23)
    for _ in range(10):
        lay = random_layout(rng)
        p, c = wire_dominated_point(rng, lay)
        jac = jacobian_at(lay, p)
        ref = fd_jacobian(LayoutField(lay), p, 1e-4 * c)
        assert np.linalg.norm(jac - ref) / np.linalg.norm(ref) < 1e-5


def test_gradient_of_magnitude_is_consistent():
    rng = np.random.default_rng(24)
    lay = random_layout(rng)
    p, c = wire_dominated_point(rng, lay)
    src = LayoutField(lay)
    grad = gradient_of_magnitude(src, p)
    h = 1e-4 * c
    for i, e in enumerate(np.eye(3)):
        num = (
            np.linalg.norm(field_at(src, p + h * e)) - np.linalg.norm(field_at(src, p - h * e))
        ) / (2 * h)
        assert grad[i] == pytest.approx(num, rel=1e-4, abs=1e-10)


def test_hessian_of_magnitude_is_symmetric():
    rng = np.random.default_rng(25)
    lay = random_layout(rng)
    p, _ = wire_dominated_point(rng, lay)
    hess = hessian_of_magnitude(lay, p)
    assert np.allclose(hess, hess.T, rtol=0, atol=1e-9 * np.abs(hess).max())


def test_derivatives_raise_at_field_zero():
    def quadrupole(pts):
        out = np.empty_like(pts)
        out[:, 0] = -pts[:, 0]
        out[:, 1] = -pts[:, 1]
        out[:, 2] = 2 * pts[:, 2]
        return 0.1 * out

    src = SyntheticField(quadrupole, char_length=1e-4)
    origin = np.zeros(3)
    with pytest.raises(ZeroFieldNondifferentiable):
        gradient_of_magnitude(src, origin)
    with pytest.raises(ZeroFieldNondifferentiable):
        hessian_of_magnitude(src, origin)


def test_field_grid_csv_layout():
    lay = _single_wire((Polyline(((-1e-3, 0.0), (1e-3, 0.0))),), size=12e-3)
    spec = GridSpec((-1e-4, -1e-4, 1e-5), (1e-4, 1e-4, 1e-4), (3, 2, 4))
    grid = field_grid(lay, spec)
    lines = grid.to_csv().splitlines()
    assert lines[0] == "x_um,y_um,z_um,Bx_G,By_G,Bz_G,Bmag_G"
    assert len(lines) == 1 + 3 * 2 * 4
    first = [float(v) for v in lines[1].split(",")]
    assert first[:3] == [-100.0, -100.0, 10.0]
    b = field_at(lay, (-1e-4, -1e-4, 1e-5))
    assert first[3] == pytest.approx(b[0] * 1e4, rel=1e-6, abs=1e-12)
    assert first[6] == pytest.approx(np.linalg.norm(b) * 1e4, rel=1e-6)


def test_field_grid_masks_points_inside_wires():
    lay = _single_wire((Polyline(((-1e-3, 0.0), (1e-3, 0.0))),), size=12e-3)
    spec = GridSpec((0.0, 0.0, 0.5e-6), (0.0, 0.0, 0.5e-6), (1, 1, 1))
    row = field_grid(lay, spec).to_csv().splitlines()[1]
    assert row.split(",")[3:] == ["nan", "nan", "nan", "nan"]

"""Trap location and characterization in the |B| landscape.

A weak-field-seeking atom sees V = -mu.B = +mu_eff*|B| (moment anti-aligned
with the field), so |B| minima are traps. Minima are located by simplex
descent refined with damped Newton/Gauss-Newton steps; curvature comes from
the finite-difference Hessian of |B| and trap frequencies follow from
omega_i = sqrt(mu*kappa_i/m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .constants import BOHR_MAGNETON, GRAVITY_G, HBAR, PLANCK_H
from .errors import NoTrapFound, NotAMinimum, SeedInsideWire, ZeroFieldNondifferentiable
from .fields import (
    ZERO_FIELD_EPS,
    as_field_source,
    hessian_of_magnitude,
    jacobian_at,
)


@dataclass(frozen=True)
class AtomSpecies:
    """Trapped species: mass [kg], cooling wavelength [m], moment [J/T]."""

    name: str
    mass: float
    wavelength: float
    magnetic_moment: float

    def __post_init__(self):
        if self.mass <= 0 or self.wavelength <= 0 or self.magnetic_moment <= 0:
            raise ValueError("species parameters must be positive")

    @property
    def recoil_energy(self) -> float:
        return PLANCK_H**2 / (2 * self.mass * self.wavelength**2)


# stretched-state moments g_F*m_F = 1 for both workhorse alkalis
CESIUM = AtomSpecies("cesium", mass=2.2069e-25, wavelength=852e-9, magnetic_moment=BOHR_MAGNETON)
RUBIDIUM87 = AtomSpecies(
    "rubidium87", mass=1.44316060e-25, wavelength=780e-9, magnetic_moment=BOHR_MAGNETON
)

SPECIES: dict[str, AtomSpecies] = {s.name: s for s in (CESIUM, RUBIDIUM87)}


def lamb_dicke(omega: float, species: AtomSpecies) -> float:
    """eta = sqrt(E_recoil / (hbar*omega)); infinite for an unconfined axis."""
    if omega <= 0.0:
        return math.inf
    return math.sqrt(species.recoil_energy / (HBAR * omega))


def species_threshold_curvature(species: AtomSpecies) -> float:
    """|B| curvature where eta = 1: kappa* = m*(E_rec/hbar)^2/mu [T/m^2]."""
    return species.mass * (species.recoil_energy / HBAR) ** 2 / species.magnetic_moment


@dataclass(frozen=True)
class MinimizeOptions:
    grad_tol: float = 1e-6  # T/m
    # |grad| is also accepted relative to the local Jacobian norm: the
    # finite-difference gradient stalls near 3e-6*|J| on stiff traps, so an
    # absolute tolerance below that can never terminate; 1e-5 leaves the
    # stall point threefold headroom while staying sub-nanometer in position.
    grad_rel: float = 1e-5
    step_tol: float = 1e-9  # m
    z_floor: float = 1e-7  # m; atoms may not reach the substrate
    max_simplex_iter: int = 800
    max_polish_iter: int = 60
    search_radius: float = 0.1  # m; wandering past this is divergence
    include_gravity: bool = False
    species: AtomSpecies = CESIUM


@dataclass(frozen=True)
class TrapPoint:
    location: np.ndarray
    b_min: float
    converged: bool
    gradient_norm: float
    iterations: int


@dataclass(frozen=True)
class CharacterizeOptions:
    majorana_field: float = 1e-5  # T (0.1 G); below this spin flips are likely
    curvature_neg_rel: float = 1e-4  # NotAMinimum when kappa < -rel*max|kappa|


@dataclass(frozen=True)
class TrapReport:
    trap: TrapPoint
    species: AtomSpecies
    curvatures: np.ndarray  # [T/m^2] ascending
    axes: np.ndarray  # columns are principal directions
    frequencies: np.ndarray  # [rad/s]
    etas: np.ndarray
    majorana_risk: bool
    quadrupole_like: bool
    potential_offset: float  # [J]; +mu*|B| for the anti-aligned moment


_FLAT_CURVATURE = 1e-3  # T/m^2; below this the landscape counts as flat
_ZERO_TRAP_FIELD = 1e-9  # T; switch the polish to field root-finding


def _objective(source, opts: MinimizeOptions):
    grav_slope = (
        opts.species.mass * GRAVITY_G / opts.species.magnetic_moment
        if opts.include_gravity
        else 0.0
    )

    def fn(p: np.ndarray) -> float:
        if p[2] < opts.z_floor:
            return math.inf
        if hasattr(source, "raw"):
            b, clearance = source.raw(p[None, :])
            if clearance[0] <= 0.0:
                return math.inf
            value = float(np.linalg.norm(b[0]))
        else:
            value = float(np.linalg.norm(source.field_batch(p[None, :])[0]))
        return value + grav_slope * p[2]

    return fn


def find_minimum(layout_or_source, seed, options: MinimizeOptions | None = None) -> TrapPoint:
    """Locate a |B| minimum near `seed` (meters).

    Simplex descent first, then Newton refinement on grad|B| (Gauss-Newton
    on B itself once |B| falls below the zero-trap threshold, where |B| is
    conical and its gradient never vanishes). A zero-field minimum counts
    as converged with gradient_norm reported as 0 (the subgradient at the
    cone vertex contains zero).
    """
    opts = options or MinimizeOptions()
    source = as_field_source(layout_or_source)
    p0 = np.asarray(seed, dtype=float).reshape(3).copy()
    p0[2] = max(p0[2], opts.z_floor)
    if source.clearance(p0) <= 0.0:
        raise SeedInsideWire(f"seed {tuple(p0)} lies inside a conductor exclusion zone")

    objective = _objective(source, opts)
    if not math.isfinite(objective(p0)):
        raise SeedInsideWire(f"seed {tuple(p0)} is not evaluable")

    scale = 0.25 * source.step_scale(p0)
    simplex = np.vstack([p0] + [p0 + scale * e for e in np.eye(3)])
    result = minimize(
        objective,
        p0,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": opts.step_tol / 2,
            "fatol": 1e-30,
            "maxiter": opts.max_simplex_iter,
            "maxfev": 4 * opts.max_simplex_iter,
        },
    )
    p = np.asarray(result.x, dtype=float)
    p[2] = max(p[2], opts.z_floor)
    evals = int(result.nfev)

    if np.linalg.norm(p - p0) > opts.search_radius:
        raise NoTrapFound(
            f"simplex walked {np.linalg.norm(p - p0):.3e} m from the seed; no local minimum"
        )

    converged = False
    grad_norm = math.inf
    last_step = math.inf
    gtol = opts.grad_tol
    for _ in range(opts.max_polish_iter):
        b = source.field_batch(p[None, :])[0]
        norm_b = float(np.linalg.norm(b))
        if norm_b < _ZERO_TRAP_FIELD:
            # Gauss-Newton on B = 0
            if norm_b < ZERO_FIELD_EPS:
                converged = True
                grad_norm = 0.0
                break
            jac = jacobian_at(source, p)
            step, *_ = np.linalg.lstsq(jac, -b, rcond=None)
        else:
            jac = jacobian_at(source, p)
            grad = jac.T @ b / norm_b
            if opts.include_gravity:
                grad = grad + np.array(
                    [0.0, 0.0, opts.species.mass * GRAVITY_G / opts.species.magnetic_moment]
                )
            grad_norm = float(np.linalg.norm(grad))
            gtol = max(opts.grad_tol, opts.grad_rel * float(np.linalg.norm(jac)))
            if grad_norm < gtol and last_step < opts.step_tol:
                converged = True
                break
            hess = hessian_of_magnitude(source, p)
            lam = 0.0
            eig_min = float(np.linalg.eigvalsh(hess)[0])
            if eig_min <= 0.0:
                lam = -eig_min + max(1e-6 * abs(eig_min), 1e-12)
            step = np.linalg.solve(hess + lam * np.eye(3), -grad)
        # backtrack into the feasible, descending region
        f_here = objective(p)
        for _ in range(30):
            trial = p + step
            trial[2] = max(trial[2], opts.z_floor)
            if objective(trial) <= f_here:
                break
            step = step / 2
        else:
            trial = p
        last_step = float(np.linalg.norm(trial - p))
        p = trial
        evals += 1
        if last_step == 0.0:
            # line search can no longer improve the objective; accept if the
            # residual gradient already sits at the relative noise floor
            converged = grad_norm < gtol if norm_b >= _ZERO_TRAP_FIELD else converged
            break
        if np.linalg.norm(p - p0) > opts.search_radius:
            raise NoTrapFound("refinement diverged from the seed region")

    b_min = float(np.linalg.norm(source.field_batch(p[None, :])[0]))
    if b_min < ZERO_FIELD_EPS:
        converged = True
        grad_norm = 0.0

    # flat landscape: no curvature anywhere near the stop point
    try:
        hess = hessian_of_magnitude(source, p)
        if float(np.max(np.abs(np.linalg.eigvalsh(hess)))) < _FLAT_CURVATURE:
            raise NoTrapFound("the |B| landscape is flat near the seed (no confinement)")
    except ZeroFieldNondifferentiable:
        pass  # a field zero is certainly not flat

    return TrapPoint(
        location=p,
        b_min=b_min,
        converged=converged,
        gradient_norm=grad_norm,
        iterations=evals,
    )


def _label_axes(axes: np.ndarray) -> list[str]:
    """Assign x/y/z labels to principal axes by dominant component."""
    names = ["x", "y", "z"]
    taken: dict[int, int] = {}  # coordinate -> axis column
    order = sorted(
        ((abs(axes[coord, col]), coord, col) for coord in range(3) for col in range(3)),
        reverse=True,
    )
    col_label: dict[int, str] = {}
    used_coords: set[int] = set()
    for _, coord, col in order:
        if col in col_label or coord in used_coords:
            continue
        col_label[col] = names[coord]
        used_coords.add(coord)
    return [col_label[c] for c in range(3)]


def characterize_trap(
    layout_or_source,
    trap: TrapPoint,
    species: AtomSpecies = CESIUM,
    options: CharacterizeOptions | None = None,
) -> TrapReport:
    """Principal curvatures, frequencies and Lamb-Dicke parameters at a trap.

    At a zero-field (quadrupole-like) minimum |B| is conical: principal
    directions come from the Jacobian quadratic form J^T J and curvatures
    from one-sided second differences, which vanish for an exactly conical
    profile; frequencies then read 0 and the trap is flagged.
    """
    copts = options or CharacterizeOptions()
    source = as_field_source(layout_or_source)
    p = trap.location
    b_min = trap.b_min

    quadrupole_like = b_min < ZERO_FIELD_EPS
    if quadrupole_like:
        jac = jacobian_at(source, p)
        _, vecs = np.linalg.eigh(jac.T @ jac)
        h = 1e-3 * source.step_scale(p)
        curv = np.zeros(3)
        for i in range(3):
            axis = vecs[:, i]
            two_sided = []
            for sign in (1.0, -1.0):
                pts = np.vstack([p + sign * h * axis, p + sign * 2 * h * axis])
                g = np.linalg.norm(source.field_batch(pts), axis=1)
                two_sided.append((g[1] - 2 * g[0] + b_min) / h**2)
            curv[i] = 0.5 * (two_sided[0] + two_sided[1])
        order = np.argsort(curv)
        curv = curv[order]
        axes = vecs[:, order]
    else:
        hess = hessian_of_magnitude(source, p)
        vals, vecs = np.linalg.eigh(hess)  # ascending
        neg_tol = copts.curvature_neg_rel * max(float(np.max(np.abs(vals))), 1.0)
        if float(vals[0]) < -neg_tol:
            raise NotAMinimum(
                f"|B| curvature {vals[0]:.3e} T/m^2 is negative at {tuple(p)}"
            )
        curv = vals
        axes = vecs

    kappa = np.clip(curv, 0.0, None)
    freqs = np.sqrt(species.magnetic_moment * kappa / species.mass)
    etas = np.array([lamb_dicke(float(w), species) for w in freqs])
    return TrapReport(
        trap=trap,
        species=species,
        curvatures=curv,
        axes=axes,
        frequencies=freqs,
        etas=etas,
        majorana_risk=b_min < copts.majorana_field,
        quadrupole_like=quadrupole_like,
        potential_offset=species.magnetic_moment * b_min,
    )


def report_keyvalues(report: TrapReport) -> dict[str, str]:
    """Flat key=value rendering; curvatures in G/cm^2 (== T/m^2)."""
    labels = _label_axes(report.axes)
    out: dict[str, str] = {}
    loc = report.trap.location
    out["x_um"] = f"{loc[0] / 1e-6:.6g}"
    out["y_um"] = f"{loc[1] / 1e-6:.6g}"
    out["height_um"] = f"{loc[2] / 1e-6:.6g}"
    out["b_min_G"] = f"{report.trap.b_min / 1e-4:.6g}"
    for name in ("x", "y", "z"):
        i = labels.index(name)
        out[f"curvature_{name}_Gcm2"] = f"{report.curvatures[i]:.6g}"
    for name in ("x", "y", "z"):
        i = labels.index(name)
        out[f"omega_{name}_rad_s"] = f"{report.frequencies[i]:.6g}"
    for name in ("x", "y", "z"):
        i = labels.index(name)
        eta = report.etas[i]
        out[f"eta_{name}"] = "inf" if math.isinf(eta) else f"{eta:.6g}"
    out["potential_offset_J"] = f"{report.potential_offset:.6g}"
    out["majorana"] = "true" if report.majorana_risk else "false"
    out["quadrupole_like"] = "true" if report.quadrupole_like else "false"
    out["converged"] = "true" if report.trap.converged else "false"
    out["species"] = report.species.name
    return out


def render_report(report: TrapReport) -> str:
    """Human-readable trap summary followed by the key=value block."""
    kv = report_keyvalues(report)
    loc = report.trap.location
    lines = [
        f"trap minimum at ({loc[0] / 1e-6:.3f}, {loc[1] / 1e-6:.3f}, "
        f"{loc[2] / 1e-6:.3f}) um, |B| = {report.trap.b_min / 1e-4:.4g} G",
        f"species {report.species.name}; "
        f"{'quadrupole-like (zero-field)' if report.quadrupole_like else 'Ioffe-like (finite bottom)'}",
        "axis  curvature[G/cm^2]  omega[rad/s]  eta",
    ]
    labels = _label_axes(report.axes)
    for name in ("x", "y", "z"):
        i = labels.index(name)
        eta = report.etas[i]
        eta_s = "inf" if math.isinf(eta) else f"{eta:.4g}"
        lines.append(
            f"  {name}   {report.curvatures[i]:>14.6g}  {report.frequencies[i]:>12.6g}  {eta_s}"
        )
    lines.append(
        f"majorana risk: {'yes' if report.majorana_risk else 'no'}; "
        f"converged: {'yes' if report.trap.converged else 'no'}"
    )
    lines.append("")
    lines.extend(f"{k}={v}" for k, v in kv.items())
    return "\n".join(lines) + "\n"

"""Exception types shared across the toolkit."""

from __future__ import annotations


class LayoutError(ValueError):
    """A layout document or layout object violates the format contract."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EvaluationTooCloseToWire(ValueError):
    """Field requested inside a conductor's exclusion radius."""

    def __init__(self, point, clearance: float):
        super().__init__(
            f"point {tuple(point)} is within the wire exclusion radius "
            f"(clearance {clearance:.3e} m)"
        )
        self.clearance = clearance


class ZeroFieldNondifferentiable(ValueError):
    """|B| derivative requested where |B| is below the zero-field epsilon."""


class SeedInsideWire(ValueError):
    """Trap search seeded inside a conductor's exclusion radius."""


class NoTrapFound(RuntimeError):
    """Minimization diverged or the |B| landscape is flat."""


class NotAMinimum(RuntimeError):
    """Characterization requested at a point with negative |B| curvature."""


class InfeasibleDimensions(ValueError):
    """No fabrication technique can produce the requested cross-section."""

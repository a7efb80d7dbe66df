"""Uniform 1-D grids and the sampled function containers built on them.

Position grids carry ``n`` points ``x_j = x_min + j dx`` with
``dx = (x_max - x_min) / n``.  Once a positive action parameter ``eta`` is
attached, the dual momentum grid is the centered grid with spacing
``dp = 2 pi eta / (n dx)``; all discrete transforms in this library keep
that duality so forward/inverse Fourier pairs land back on the same grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigurationError, NormalizationError, ParameterError

__all__ = [
    "Grid",
    "GridFunction",
    "PhaseSpaceFunction",
    "make_grid",
    "dual_grid",
    "phase_space_grids",
    "boundary_leak",
]

#: relative tolerance used when comparing grids / eta values for identity
_MATCH_RTOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``n`` points on ``[x_min, x_max)``."""

    x_min: float
    x_max: float
    n: int

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def points(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def is_centered(self) -> bool:
        return abs(self.x_min + self.x_max) <= _MATCH_RTOL * self.length

    def matches(self, other: "Grid") -> bool:
        scale = max(self.length, other.length)
        return (
            self.n == other.n
            and abs(self.x_min - other.x_min) <= _MATCH_RTOL * scale
            and abs(self.x_max - other.x_max) <= _MATCH_RTOL * scale
        )


def make_grid(x_min: float, x_max: float, n: int) -> Grid:
    """Build a validated grid; ``n`` must be a power of two >= 16."""
    if not isinstance(n, (int, np.integer)):
        raise ConfigurationError(f"point count must be an integer, got {n!r}")
    if not _is_power_of_two(int(n)) or n < 16:
        raise ConfigurationError(f"point count must be a power of two >= 16, got {n}")
    if not (x_max > x_min):
        raise ConfigurationError(f"degenerate interval [{x_min}, {x_max}]")
    return Grid(float(x_min), float(x_max), int(n))


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not eta > 0.0 or not np.isfinite(eta):
        raise ParameterError(f"eta must be a positive real number, got {eta}")
    return eta


def dual_grid(grid: Grid, eta: float) -> Grid:
    """Centered momentum grid dual to ``grid``: spacing ``2 pi eta/(n dx)``."""
    eta = _check_eta(eta)
    dp = 2.0 * np.pi * eta / (grid.n * grid.dx)
    half = 0.5 * grid.n * dp
    return Grid(-half, half, grid.n)


def phase_space_grids(grid: Grid, eta: float) -> tuple[Grid, Grid]:
    """The (x, p) grid pair used for phase-space functions over ``grid``."""
    return grid, dual_grid(grid, eta)


@dataclass
class GridFunction:
    """Complex function sampled on a :class:`Grid` with attached ``eta``."""

    grid: Grid
    values: np.ndarray
    eta: float

    def __post_init__(self):
        self.eta = _check_eta(self.eta)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n,):
            raise ParameterError(
                f"values shape {self.values.shape} does not match grid size {self.grid.n}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ParameterError("grid function contains non-finite samples")

    @property
    def dx(self) -> float:
        return self.grid.dx

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.dx)

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def inner(self, other: "GridFunction") -> complex:
        """dx-weighted inner product, antilinear in ``self``."""
        self.require_compatible(other)
        return complex(np.vdot(self.values, other.values) * self.dx)

    def normalized(self) -> "GridFunction":
        nrm = self.norm()
        if nrm == 0.0:
            raise NormalizationError("cannot normalize the zero function")
        return replace(self, values=self.values / nrm)

    def require_normalized(self, tol: float = 1e-8):
        if abs(self.norm() - 1.0) > tol:
            raise NormalizationError(f"state norm is {self.norm()}, expected 1")

    def require_compatible(self, other: "GridFunction"):
        if not self.grid.matches(other.grid):
            raise ParameterError("grid mismatch between grid functions")
        if abs(self.eta - other.eta) > _MATCH_RTOL * max(self.eta, other.eta):
            raise ParameterError("eta mismatch between grid functions")


@dataclass
class PhaseSpaceFunction:
    """Function on the ``x_grid`` x ``p_grid`` lattice (axis 0 = x, axis 1 = p).

    ``kind`` tags how the values should be interpreted: ``"wigner"`` for
    (real) Wigner distributions, ``"symbol"`` for Weyl symbols,
    ``"ambiguity"`` for ambiguity functions and ``"generic"`` otherwise.
    """

    x_grid: Grid
    p_grid: Grid
    values: np.ndarray
    eta: float
    kind: str = "generic"
    leak: float = field(default=0.0, compare=False)

    KINDS = ("wigner", "symbol", "ambiguity", "generic")

    def __post_init__(self):
        self.eta = _check_eta(self.eta)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.x_grid.n, self.p_grid.n):
            raise ParameterError(
                f"values shape {self.values.shape} does not match grids "
                f"({self.x_grid.n}, {self.p_grid.n})"
            )
        if self.kind not in self.KINDS:
            raise ParameterError(f"unknown kind {self.kind!r}")

    @property
    def dx(self) -> float:
        return self.x_grid.dx

    @property
    def dp(self) -> float:
        return self.p_grid.dx

    @property
    def area_element(self) -> float:
        return self.dx * self.dp

    def integral(self) -> complex:
        return complex(np.sum(self.values) * self.area_element)

    def real_values(self, rtol: float = 1e-10) -> np.ndarray:
        """Real part, verifying the imaginary residue is negligible."""
        scale = float(np.max(np.abs(self.values))) or 1.0
        resid = float(np.max(np.abs(self.values.imag)))
        if resid > rtol * scale:
            raise ParameterError(
                f"imaginary residue {resid:.3e} exceeds {rtol:.0e} x scale {scale:.3e}"
            )
        return self.values.real.copy()

    def require_compatible(self, other: "PhaseSpaceFunction"):
        if not (self.x_grid.matches(other.x_grid) and self.p_grid.matches(other.p_grid)):
            raise ParameterError("phase-space grid mismatch")
        if abs(self.eta - other.eta) > _MATCH_RTOL * max(self.eta, other.eta):
            raise ParameterError("eta mismatch between phase-space functions")

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x_grid.points, self.p_grid.points, indexing="ij")


def boundary_leak(values: np.ndarray, fraction: float = 0.05) -> float:
    """Fraction of |values|^2 mass in the outer ``fraction`` of each axis.

    Diagnostic for the assumption that functions are negligible outside the
    grid; returned with transform results rather than raised.
    """
    values = np.asarray(values)
    total = float(np.sum(np.abs(values) ** 2))
    if total == 0.0:
        return 0.0
    mask = np.zeros(values.shape, dtype=bool)
    for axis, n in enumerate(values.shape):
        edge = max(1, int(np.ceil(fraction * n)))
        sl = [slice(None)] * values.ndim
        sl[axis] = slice(0, edge)
        mask[tuple(sl)] = True
        sl[axis] = slice(n - edge, n)
        mask[tuple(sl)] = True
    outer = float(np.sum(np.abs(values[mask]) ** 2))
    return outer / total

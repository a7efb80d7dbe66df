"""Reference wavefunctions sampled on grids.

All states use the eta-scaled harmonic-oscillator conventions: the standard
coherent state is phi0(x) = (pi eta)^(-1/4) exp(-x^2 / 2 eta) and the
Hermite states are its excited companions.
"""

from __future__ import annotations

import numpy as np
from scipy.special import eval_hermite, gammaln

from .errors import ParameterError
from .grid import Grid, GridFunction

__all__ = ["coherent_state", "hermite_state", "gaussian_wavepacket"]


def coherent_state(grid: Grid, eta: float, x0: float = 0.0, p0: float = 0.0) -> GridFunction:
    """Standard coherent state, optionally displaced to (x0, p0).

    The displaced version carries the symmetrized displacement phase
    exp(i (p0 x - p0 x0 / 2) / eta), matching the Weyl displacement of the
    centered state.
    """
    x = grid.points
    values = (np.pi * eta) ** -0.25 * np.exp(-((x - x0) ** 2) / (2.0 * eta))
    if p0 != 0.0:
        values = values * np.exp(1j * (p0 * x - 0.5 * p0 * x0) / eta)
    return GridFunction(grid, values, eta)


def hermite_state(grid: Grid, eta: float, k: int) -> GridFunction:
    """k-th Hermite (number) state for the eta-oscillator."""
    if k < 0 or int(k) != k:
        raise ParameterError(f"Hermite index must be a non-negative integer, got {k}")
    x = grid.points
    xi = x / np.sqrt(eta)
    lognorm = -0.5 * (k * np.log(2.0) + gammaln(k + 1)) - 0.25 * np.log(np.pi * eta)
    values = np.exp(lognorm) * eval_hermite(int(k), xi) * np.exp(-0.5 * xi**2)
    return GridFunction(grid, values, eta)


def gaussian_wavepacket(
    grid: Grid,
    eta: float,
    m: complex,
    x0: float = 0.0,
) -> GridFunction:
    """Generalized Gaussian psi_M with M = X + iY, X > 0 (one degree of freedom).

    psi_M(x) = (pi eta)^(-1/4) X^(1/4) exp(-M (x - x0)^2 / (2 eta)).
    """
    m = complex(m)
    if not m.real > 0.0:
        raise ParameterError(f"Re M must be positive, got {m}")
    x = grid.points
    values = (
        (np.pi * eta) ** -0.25
        * m.real**0.25
        * np.exp(-m * (x - x0) ** 2 / (2.0 * eta))
    )
    return GridFunction(grid, values, eta)

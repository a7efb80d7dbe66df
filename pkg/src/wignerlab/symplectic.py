"""Symplectic linear algebra and metaplectic (quadratic Fourier) operators.

Phase-space coordinates are ordered z = (x_1..x_n, p_1..p_n), with the
standard form sigma(z, z') = p x' - p' x, i.e. J = [[0, I], [-I, 0]].

A free symplectic matrix (invertible upper-right block B) carries the
generating function

    A(x, x') = 1/2 P x.x - Q x.x' + 1/2 R x'.x'
    P = D B^-1,  Q = B^-1,  R = B^-1 A

and lifts to the quadratic Fourier transform

    S_{A,m} psi(x) = (2 pi eta)^(-n/2) i^(m - n/2) sqrt|det B^-1|
                     Int exp(i A(x, x')/eta) psi(x') dx'

with m = 0 if det B^-1 > 0 and m = 1 otherwise.  The same operator factors
into elementary chirp / rescale / Fourier steps, which is the cheap path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur, sqrtm

from .errors import NotFreeError, ParameterError, ValidationError
from .grid import GridFunction, dual_grid
from .interpolate import periodic_interp, refine
from .transforms import eta_fourier

__all__ = [
    "j_matrix",
    "blocks",
    "is_symplectic",
    "require_symplectic",
    "chirp_matrix",
    "rescale_matrix",
    "fourier_matrix",
    "symplectic_eigenvalues",
    "WilliamsonData",
    "williamson",
    "GeneratingFunction",
    "free_generating_function",
    "MetaplecticSpec",
    "metaplectic_matrix",
    "metaplectic_apply",
]

SYMPLECTIC_TOL = 1e-10


def j_matrix(n: int) -> np.ndarray:
    """Standard symplectic form J = [[0, I], [-I, 0]]."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _dimension(S: np.ndarray) -> int:
    S = np.asarray(S)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        raise ParameterError(f"expected an even square matrix, got shape {S.shape}")
    return S.shape[0] // 2


def blocks(S: np.ndarray):
    """Upper-left A, upper-right B, lower-left C, lower-right D blocks."""
    n = _dimension(S)
    S = np.asarray(S, dtype=float)
    return S[:n, :n], S[:n, n:], S[n:, :n], S[n:, n:]


def is_symplectic(S: np.ndarray):
    """(verdict, residual) with residual = max |S^T J S - J|."""
    n = _dimension(S)
    S = np.asarray(S, dtype=float)
    J = j_matrix(n)
    residual = float(np.max(np.abs(S.T @ J @ S - J)))
    return residual <= SYMPLECTIC_TOL, residual


def require_symplectic(S: np.ndarray, tol: float = SYMPLECTIC_TOL) -> np.ndarray:
    ok, residual = is_symplectic(S)
    if residual > tol:
        raise ValidationError(f"matrix is not symplectic (residual {residual:.3e})")
    return np.asarray(S, dtype=float)


def chirp_matrix(P) -> np.ndarray:
    """Symplectic matrix [[I, 0], [P, I]] of the chirp exp(i P x.x / 2 eta)."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    if np.max(np.abs(P - P.T)) > 1e-12:
        raise ParameterError("chirp matrix P must be symmetric")
    n = P.shape[0]
    return np.block([[np.eye(n), np.zeros((n, n))], [P, np.eye(n)]])


def rescale_matrix(L) -> np.ndarray:
    """Symplectic matrix [[L^-1, 0], [0, L^T]] of psi(x) -> sqrt|det L| psi(Lx)."""
    L = np.atleast_2d(np.asarray(L, dtype=float))
    if abs(np.linalg.det(L)) < 1e-12:
        raise ParameterError("rescale matrix L must be invertible")
    n = L.shape[0]
    return np.block(
        [[np.linalg.inv(L), np.zeros((n, n))], [np.zeros((n, n)), L.T]]
    )


def fourier_matrix(n: int = 1) -> np.ndarray:
    return j_matrix(n)


def _check_pd(sigma: np.ndarray) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=float)
    n = _dimension(sigma)
    if np.max(np.abs(sigma - sigma.T)) > 1e-10 * max(1.0, np.max(np.abs(sigma))):
        raise ValidationError("covariance matrix must be symmetric")
    if np.linalg.eigvalsh(sigma)[0] <= 0.0:
        raise ValidationError("covariance matrix must be positive definite")
    return 0.5 * (sigma + sigma.T), n


def symplectic_eigenvalues(sigma: np.ndarray) -> np.ndarray:
    """Moduli of the +-i lambda_j eigenvalue pairs of J Sigma, ascending.

    Cross-checked internally against the Hermitian route through
    sqrt(Sigma) J sqrt(Sigma).
    """
    sigma, n = _check_pd(sigma)
    J = j_matrix(n)
    vals = np.linalg.eigvals(J @ sigma)
    if np.max(np.abs(vals.real)) > 1e-9 * np.max(np.abs(vals)):
        raise ValidationError("eigenvalues of J Sigma are not purely imaginary")
    lams = np.sort(np.abs(vals.imag))
    paired = lams.reshape(n, 2)
    if np.max(np.abs(paired[:, 0] - paired[:, 1])) > 1e-9 * max(1.0, lams[-1]):
        raise ValidationError("eigenvalues of J Sigma do not pair as +-i lambda")
    out = paired[:, 0]
    root = sqrtm(sigma).real
    check = np.sort(np.abs(np.linalg.eigvalsh(1j * root @ J @ root)))
    if np.max(np.abs(np.repeat(out, 2) - check)) > 1e-9 * max(1.0, lams[-1]):
        raise ValidationError("symplectic eigenvalue cross-check failed")
    return out


@dataclass
class WilliamsonData:
    """Factorization Sigma = S^T D S with S symplectic, D = diag(L, L)."""

    S: np.ndarray
    eigenvalues: np.ndarray  # ascending

    @property
    def D(self) -> np.ndarray:
        return np.diag(np.concatenate([self.eigenvalues, self.eigenvalues]))


def williamson(sigma: np.ndarray) -> WilliamsonData:
    """Williamson normal form of a positive definite matrix.

    n = 1 uses the closed-form triangular factor; general n goes through the
    real Schur form of Sigma^(-1/2) J Sigma^(-1/2).
    """
    sigma, n = _check_pd(sigma)
    if n == 1:
        a, b, c = sigma[0, 0], sigma[0, 1], sigma[1, 1]
        d = np.sqrt(a * c - b * b)
        S = np.array(
            [[np.sqrt(a / d), b / np.sqrt(a * d)], [0.0, np.sqrt(d / a)]]
        )
        return WilliamsonData(S, np.array([d]))
    lams = symplectic_eigenvalues(sigma)
    if np.min(np.diff(np.sort(lams))) < 1e-12:
        import warnings

        warnings.warn("near-degenerate symplectic eigenvalues; factor may be ill-conditioned")
    M = sqrtm(sigma).real
    Minv = np.linalg.inv(M)
    W = Minv @ j_matrix(n) @ Minv
    W = 0.5 * (W - W.T)
    T, Q = schur(W, output="real")
    pairs = []
    for i in range(n):
        kappa = T[2 * i, 2 * i + 1]
        cols = (2 * i, 2 * i + 1) if kappa > 0 else (2 * i + 1, 2 * i)
        pairs.append((1.0 / abs(kappa), cols))
    pairs.sort(key=lambda item: item[0])
    lam = np.array([item[0] for item in pairs])
    order = [item[1][0] for item in pairs] + [item[1][1] for item in pairs]
    Qp = Q[:, order]
    Dhalf = np.diag(np.concatenate([lam, lam]) ** -0.5)
    S = (M @ Qp @ Dhalf).T
    require_symplectic(S, tol=1e-9)
    return WilliamsonData(S, lam)


@dataclass
class GeneratingFunction:
    """Quadratic generating function of a free symplectic matrix."""

    P: np.ndarray
    Q: np.ndarray
    R: np.ndarray

    def value(self, x, xp) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        xp = np.atleast_1d(np.asarray(xp, dtype=float))
        return float(
            0.5 * x @ self.P @ x - x @ self.Q @ xp + 0.5 * xp @ self.R @ xp
        )

    def gradients(self, x, xp):
        """(p, p') from p = dA/dx and p' = -dA/dx'."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        xp = np.atleast_1d(np.asarray(xp, dtype=float))
        return self.P @ x - self.Q @ xp, self.Q.T @ x - self.R @ xp


def free_generating_function(S: np.ndarray) -> GeneratingFunction:
    S = require_symplectic(S)
    A, B, C, D = blocks(S)
    if abs(np.linalg.det(B)) < 1e-12:
        raise NotFreeError("upper-right block B is singular; matrix is not free")
    Binv = np.linalg.inv(B)
    P, Q, R = D @ Binv, Binv, Binv @ A
    if max(np.max(np.abs(P - P.T)), np.max(np.abs(R - R.T))) > 1e-10:
        raise ValidationError("generating-function blocks failed symmetry check")
    return GeneratingFunction(P, Q, R)


@dataclass
class MetaplecticSpec:
    """A metaplectic operator, as a free matrix or a generator word.

    Word steps (applied first to last):
      ("chirp", P)       multiply by exp(i P x^2 / 2 eta)       -> [[1,0],[P,1]]
      ("rescale", L, m)  i^m sqrt|L| psi(L x)                   -> [[1/L,0],[0,L]]
      ("fourier",)       i^(-1/2) F_eta                          -> J
    """

    matrix: np.ndarray | None = None
    word: list | None = None

    @classmethod
    def free(cls, S: np.ndarray) -> "MetaplecticSpec":
        S = require_symplectic(S)
        _, B, _, _ = blocks(S)
        if abs(np.linalg.det(B)) < 1e-12:
            raise NotFreeError(
                "matrix is not free; compose two free factors (e.g. S = (S J) J^-1) "
                "and supply a generator word instead"
            )
        return cls(matrix=S)

    @classmethod
    def from_word(cls, word: list) -> "MetaplecticSpec":
        if not word:
            raise ParameterError("generator word must not be empty")
        return cls(word=list(word))

    @classmethod
    def free_as_word(cls, S: np.ndarray) -> "MetaplecticSpec":
        """Generator word realizing the quadratic Fourier transform of S."""
        gen = free_generating_function(S)
        m = 0 if np.linalg.det(gen.Q) > 0 else 1
        return cls(word=[("chirp", gen.R), ("fourier",), ("rescale", gen.Q, m), ("chirp", gen.P)])


def _step_matrix(step) -> np.ndarray:
    kind = step[0]
    if kind == "chirp":
        return chirp_matrix(step[1])
    if kind == "rescale":
        return rescale_matrix(step[1])
    if kind == "fourier":
        return fourier_matrix(1)
    raise ParameterError(f"unknown generator step {kind!r}")


def metaplectic_matrix(spec: MetaplecticSpec) -> np.ndarray:
    """The symplectic matrix underneath a metaplectic spec."""
    if spec.matrix is not None:
        return np.asarray(spec.matrix, dtype=float)
    S = None
    for step in spec.word:
        M = _step_matrix(step)
        S = M if S is None else M @ S
    return S


def _apply_chirp(psi: GridFunction, P) -> GridFunction:
    P = float(np.atleast_2d(P)[0, 0])
    phase = np.exp(1j * P * psi.grid.points**2 / (2.0 * psi.eta))
    return GridFunction(psi.grid, phase * psi.values, psi.eta)


def _apply_rescale(psi: GridFunction, L, m: int) -> GridFunction:
    L = float(np.atleast_2d(L)[0, 0])
    if not 0.25 <= abs(L) <= 4.0:
        raise ParameterError(f"|L| = {abs(L)} outside the supported range [1/4, 4]")
    values = periodic_interp(psi.values, psi.grid, L * psi.grid.points, zero_outside=True)
    values = (1j) ** (m % 4) * np.sqrt(abs(L)) * values
    return GridFunction(psi.grid, values, psi.eta)


def _apply_fourier(psi: GridFunction) -> GridFunction:
    phi = eta_fourier(psi)
    if phi.grid.matches(psi.grid):
        values = phi.values
    else:
        # momentum grid differs from the position grid: resample band-limitedly
        values = periodic_interp(phi.values, phi.grid, psi.grid.points, zero_outside=True)
    factor = np.exp(-0.25j * np.pi)  # i^(-1/2), principal branch, n = 1
    return GridFunction(psi.grid, factor * values, psi.eta)


def metaplectic_apply(spec: MetaplecticSpec, psi: GridFunction) -> GridFunction:
    """Apply a metaplectic operator to a state (one degree of freedom).

    Free matrices go through the O(N^2) quadrature of the quadratic Fourier
    transform; generator words apply their elementary steps in sequence.
    """
    if spec.word is not None:
        out = psi
        for step in spec.word:
            kind = step[0]
            if kind == "chirp":
                out = _apply_chirp(out, step[1])
            elif kind == "rescale":
                m = step[2] if len(step) > 2 else 0
                out = _apply_rescale(out, step[1], m)
            elif kind == "fourier":
                out = _apply_fourier(out)
            else:
                raise ParameterError(f"unknown generator step {kind!r}")
        return out
    S = require_symplectic(spec.matrix)
    if S.shape != (2, 2):
        raise ParameterError("grid-based metaplectic application supports n = 1 only")
    gen = free_generating_function(S)
    eta = psi.eta
    grid = psi.grid
    binv = gen.Q[0, 0]
    m = 0 if binv > 0 else 1
    x = grid.points
    # The integrand is psi times a chirp whose local frequency reaches
    # (|Q| + |R|) L / 2 eta, so the x' quadrature needs band-limited
    # oversampling before its Riemann sum is exact.
    chirp_band = (abs(gen.Q[0, 0]) + abs(gen.R[0, 0])) * grid.length * grid.dx
    factor = 1 + int(np.ceil(chirp_band / (2.0 * np.pi * eta)))
    fine_vals = refine(psi.values, factor)
    xf = grid.x_min + np.arange(factor * grid.n) * grid.dx / factor
    quad = (
        0.5 * gen.P[0, 0] * x[:, None] ** 2
        - gen.Q[0, 0] * np.outer(x, xf)
        + 0.5 * gen.R[0, 0] * xf[None, :] ** 2
    )
    prefactor = (
        (2.0 * np.pi * eta) ** -0.5
        * np.exp(0.5j * np.pi * (m - 0.5))
        * np.sqrt(abs(binv))
        * grid.dx
        / factor
    )
    values = prefactor * np.exp(1j * quad / eta) @ fine_vals
    return GridFunction(grid, values, eta)

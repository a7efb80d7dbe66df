"""Quantum admissibility of phase-space functions.

Three layers of tests decide whether a normalized phase-space function can
be the Wigner distribution of a state at a given eta:

* Gaussian closed form: admissible iff |eta| <= 2 lambda_min(Sigma),
  equivalently Sigma + i eta J / 2 >= 0.
* Sampled quantum-Bochner (KLM) matrices: any finite matrix with entries
  exp(i sigma(z_j, z_k)/2 eta) a_sigma(z_j - z_k) must be positive
  semidefinite.  Sampling can certify failure only, never positivity.
* A Hessian necessary condition at the origin of the eta-free reduced
  transform: -f''(0) + i eta J / 2 >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ValidationError
from .grid import Grid, GridFunction, PhaseSpaceFunction, dual_grid
from .symplectic import j_matrix, symplectic_eigenvalues
from .wavefunctions import gaussian_wavepacket
from .weyl import weyl_quantize

__all__ = [
    "CovarianceMatrix",
    "GaussianStateSpec",
    "KLMReport",
    "EtaScanResult",
    "gaussian_state",
    "covariance_matrix",
    "gaussian_admissible",
    "robertson_schrodinger_checks",
    "reduced_transform",
    "sigma_transform_at",
    "klm_test",
    "narcowich_oconnell_profile",
    "quartic_derivative_witness",
    "eta_scan",
]


@dataclass
class CovarianceMatrix:
    sigma: np.ndarray
    mean: np.ndarray
    n: int

    def __post_init__(self):
        self.sigma = np.asarray(self.sigma, dtype=float)
        self.mean = np.asarray(self.mean, dtype=float)
        if self.sigma.shape != (2 * self.n, 2 * self.n):
            raise ParameterError("covariance matrix has wrong shape")
        scale = max(1.0, float(np.max(np.abs(self.sigma))))
        if np.max(np.abs(self.sigma - self.sigma.T)) > 1e-10 * scale:
            raise ValidationError("covariance matrix must be symmetric")


@dataclass
class GaussianStateSpec:
    sigma: np.ndarray
    mean: np.ndarray
    eta: float


def gaussian_state(spec, grid: Grid):
    """Sample a Gaussian phase-space state on a grid.

    With a :class:`GaussianStateSpec` the result is the normal density
    rho(z) = (2 pi)^-n (det Sigma)^(-1/2) exp(-1/2 Sigma^-1 (z-z0).(z-z0))
    as a Wigner-kind phase-space function.  With a wavepacket parameter
    M = X + iY (n = 1) the result is the sampled state psi_M together with
    its closed-form Wigner (pi eta)^-1 exp(-G z.z / eta), G = S^T S.
    """
    if isinstance(spec, GaussianStateSpec):
        sigma = np.asarray(spec.sigma, dtype=float)
        if sigma.shape != (2, 2):
            raise ParameterError("gridded Gaussian states support n = 1 only")
        if np.linalg.eigvalsh(sigma)[0] <= 0.0:
            raise ValidationError("covariance matrix must be positive definite")
        p_grid = dual_grid(grid, spec.eta)
        xx, pp = np.meshgrid(grid.points, p_grid.points, indexing="ij")
        z0 = np.asarray(spec.mean, dtype=float)
        dz = np.stack([xx - z0[0], pp - z0[1]])
        inv = np.linalg.inv(sigma)
        quad = (
            inv[0, 0] * dz[0] ** 2
            + 2.0 * inv[0, 1] * dz[0] * dz[1]
            + inv[1, 1] * dz[1] ** 2
        )
        norm = 1.0 / (2.0 * np.pi * np.sqrt(np.linalg.det(sigma)))
        values = norm * np.exp(-0.5 * quad)
        return PhaseSpaceFunction(grid, p_grid, values, spec.eta, kind="wigner")
    if isinstance(spec, dict):
        m = complex(spec["m"])
        eta = float(spec["eta"])
        x0 = float(spec.get("x0", 0.0))
        psi = gaussian_wavepacket(grid, eta, m, x0)
        x_pd, y_pd = m.real, m.imag
        G = np.array(
            [[x_pd + y_pd**2 / x_pd, y_pd / x_pd], [y_pd / x_pd, 1.0 / x_pd]]
        )
        p_grid = dual_grid(grid, eta)
        xx, pp = np.meshgrid(grid.points - x0, p_grid.points, indexing="ij")
        quad = G[0, 0] * xx**2 + 2.0 * G[0, 1] * xx * pp + G[1, 1] * pp**2
        closed = np.exp(-quad / eta) / (np.pi * eta)
        W = PhaseSpaceFunction(grid, p_grid, closed, eta, kind="wigner")
        return {"psi": psi, "wigner_closed": W, "G": G}
    raise ParameterError(f"unsupported Gaussian spec {type(spec).__name__}")


def covariance_matrix(W: PhaseSpaceFunction) -> CovarianceMatrix:
    """Second central moments of a normalized phase-space distribution."""
    values = W.values.real
    mass = float(np.sum(values) * W.area_element)
    if abs(mass - 1.0) > 1e-3:
        raise ValidationError(f"distribution mass is {mass}, expected 1")
    weight = W.area_element / mass
    xx, pp = W.meshes()
    mx = float(np.sum(xx * values) * weight)
    mp = float(np.sum(pp * values) * weight)
    dzx, dzp = xx - mx, pp - mp
    sxx = float(np.sum(dzx * dzx * values) * weight)
    sxp = float(np.sum(dzx * dzp * values) * weight)
    spp = float(np.sum(dzp * dzp * values) * weight)
    return CovarianceMatrix(np.array([[sxx, sxp], [sxp, spp]]), np.array([mx, mp]), 1)


def gaussian_admissible(sigma: np.ndarray, eta: float) -> dict:
    """Quantum admissibility of a Gaussian covariance matrix at eta.

    Both equivalent forms are computed and must agree:
    |eta| <= 2 lambda_min  and  Sigma + i eta J / 2 >= 0.
    Also reports the (weaker) per-mode Robertson-Schrodinger checks.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0] // 2
    scale = max(1.0, float(np.max(np.abs(sigma))))
    symmetric = np.max(np.abs(sigma - sigma.T)) <= 1e-10 * scale
    positive = symmetric and np.linalg.eigvalsh(0.5 * (sigma + sigma.T))[0] > 0.0
    matrix = 0.5 * (sigma + sigma.T) + 0.5j * abs(eta) * j_matrix(n)
    matrix_min = float(np.linalg.eigvalsh(matrix)[0])
    matrix_ok = matrix_min >= -1e-10 * scale
    out = {
        "positive_definite": bool(positive),
        "matrix_min_eigenvalue": matrix_min,
        "rs_checks": robertson_schrodinger_checks(sigma, eta),
    }
    if positive:
        lam_min = float(symplectic_eigenvalues(0.5 * (sigma + sigma.T))[0])
        lam_ok = abs(eta) <= 2.0 * lam_min + 1e-9 * scale
        if lam_ok != matrix_ok:
            raise ValidationError(
                "admissibility criteria disagree: "
                f"2 lambda_min = {2 * lam_min}, matrix min eig = {matrix_min}"
            )
        out["lambda_min"] = lam_min
        out["admissible"] = bool(lam_ok)
    else:
        out["lambda_min"] = None
        out["admissible"] = False
    return out


def robertson_schrodinger_checks(sigma: np.ndarray, eta: float) -> list:
    """Per-mode checks dx_j dp_j >= sqrt(cov(x_j,p_j)^2 + eta^2/4)."""
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0] // 2
    checks = []
    for j in range(n):
        var_x, var_p = sigma[j, j], sigma[n + j, n + j]
        cov = sigma[j, n + j]
        lhs = var_x * var_p
        rhs = cov**2 + eta**2 / 4.0
        checks.append(
            {"mode": j, "lhs": float(lhs), "rhs": float(rhs), "ok": bool(lhs >= rhs - 1e-12)}
        )
    return checks


def _quadrature_transform(a: PhaseSpaceFunction, points: np.ndarray, scale: float) -> np.ndarray:
    """sum over z' of exp(-i sigma(w, z') * scale) a(z') dz' at points w."""
    x = a.x_grid.points
    p = a.p_grid.points
    flat = a.values.reshape(-1)
    xx, pp = np.meshgrid(x, p, indexing="ij")
    zx, zp = xx.reshape(-1), pp.reshape(-1)
    out = np.empty(len(points), dtype=complex)
    chunk = 64
    for start in range(0, len(points), chunk):
        block = np.asarray(points[start : start + chunk], dtype=float)
        # sigma(w, z') = w_p x' - p' w_x
        phase = np.exp(
            -1j * scale * (np.outer(block[:, 1], zx) - np.outer(block[:, 0], zp))
        )
        out[start : start + chunk] = phase @ flat
    return out * a.area_element


def reduced_transform(a: PhaseSpaceFunction, points) -> np.ndarray:
    """eta-free reduced transform Int exp(-i sigma(w, z')) a(z') dz'."""
    return _quadrature_transform(a, np.atleast_2d(points), 1.0)


def sigma_transform_at(a: PhaseSpaceFunction, points, eta: float) -> np.ndarray:
    """Symplectic Fourier transform at arbitrary points for a given eta."""
    values = _quadrature_transform(a, np.atleast_2d(points), 1.0 / eta)
    return values / (2.0 * np.pi * eta)


@dataclass
class KLMReport:
    points: np.ndarray
    min_eigenvalue: float
    tolerance: float
    hessian_min_eigenvalue: float
    continuity_residual: float
    verdict: str  # "no violation found" or "violation"
    seed: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "no violation found"


def _check_unit_mass(a: PhaseSpaceFunction):
    scale = float(np.max(np.abs(a.values))) or 1.0
    if float(np.max(np.abs(a.values.imag))) > 1e-9 * scale:
        raise ValidationError("phase-space function must be real")
    mass = float(np.sum(a.values.real) * a.area_element)
    if abs(mass - 1.0) > 1e-6:
        raise ValidationError(f"phase-space mass is {mass}, expected 1")
    return mass


def _hessian_check(a: PhaseSpaceFunction, eta: float) -> float:
    """Min eigenvalue of -f''(0)/f(0) + i eta J / 2 for the reduced transform f.

    Differentiating f(w) = Int exp(-i sigma(w, z)) a(z) dz under the integral
    turns the Hessian into exact second moments of a, so no finite
    differences are needed:

        -f''(0) = [[Int p^2 a, -Int x p a], [-Int x p a, Int x^2 a]].
    """
    xx, pp = a.meshes()
    vals = a.values.real
    w = a.area_element
    f0 = float(np.sum(vals) * w)
    mpp = float(np.sum(pp**2 * vals) * w)
    mxx = float(np.sum(xx**2 * vals) * w)
    mxp = float(np.sum(xx * pp * vals) * w)
    matrix = np.array([[mpp, -mxp], [-mxp, mxx]]) / f0 + 0.5j * eta * j_matrix(1)
    return float(np.linalg.eigvalsh(matrix)[0])


def klm_test(
    a: PhaseSpaceFunction,
    eta: float,
    samples: int = 40,
    seed: int = 0,
) -> KLMReport:
    """Sampled quantum-Bochner positivity test at a given eta.

    Draws phase-space points in a ball scaled to the distribution (kept in
    the inner 80% of the grid), builds the KLM matrix and reports its
    minimum Hermitian eigenvalue.  A positive report reads "no violation
    found" — sampling cannot prove positivity over all point sets.
    """
    _check_unit_mass(a)
    if samples < 2:
        raise ParameterError("need at least two sample points")
    cov = covariance_matrix(
        PhaseSpaceFunction(
            a.x_grid, a.p_grid,
            np.abs(a.values.real)
            / (np.sum(np.abs(a.values.real)) * a.area_element),
            a.eta,
        )
    )
    radius = 3.0 * float(np.sqrt(np.linalg.eigvalsh(cov.sigma)[-1]))
    radius = min(
        radius,
        0.4 * a.x_grid.length,
        0.4 * a.p_grid.length,
    )
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, samples)
    radii = radius * np.sqrt(rng.uniform(0.0, 1.0, samples))
    points = np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=1)
    diffs = points[:, None, :] - points[None, :, :]
    asig = sigma_transform_at(a, diffs.reshape(-1, 2), eta).reshape(samples, samples)
    # sigma(z_j, z_k) = p_j x_k - p_k x_j
    sig = np.outer(points[:, 1], points[:, 0]) - np.outer(points[:, 0], points[:, 1])
    matrix = np.exp(0.5j * sig / eta) * asig
    matrix = 0.5 * (matrix + matrix.conj().T)
    min_eig = float(np.linalg.eigvalsh(matrix)[0])
    tol = 1e-8 * float(np.linalg.norm(matrix, 2))
    at_zero = sigma_transform_at(a, np.array([[0.0, 0.0]]), eta)[0]
    continuity = abs(at_zero - 1.0 / (2.0 * np.pi * eta))
    hess_min = _hessian_check(a, eta)
    ok = min_eig >= -tol and hess_min >= -1e-8 * max(1.0, abs(eta))
    return KLMReport(
        points=points,
        min_eigenvalue=min_eig,
        tolerance=tol,
        hessian_min_eigenvalue=hess_min,
        continuity_residual=float(continuity),
        verdict="no violation found" if ok else "violation",
        seed=seed,
        details={"radius": radius},
    )


def narcowich_oconnell_profile(a: float, b: float):
    """The classical-but-not-quantum profile

    f(x, p) = (1 - a x^2 / 2 - b p^2 / 2) exp(-(a^2 x^4 + b^2 p^4))

    whose fourth x-derivative at the origin is -24 a^2 < 0, ruling out
    eta-positivity for every eta with a b >= eta^2 / 4.
    """
    if a <= 0.0 or b <= 0.0:
        raise ParameterError("profile parameters must be positive")

    def profile(x, p):
        x = np.asarray(x, dtype=float)
        p = np.asarray(p, dtype=float)
        return (1.0 - 0.5 * a * x**2 - 0.5 * b * p**2) * np.exp(
            -(a**2 * x**4 + b**2 * p**4)
        )

    return profile


def quartic_derivative_witness(f, h: float = 0.05) -> float:
    """Central finite-difference d^4 f / dx^4 at the origin (p = 0)."""
    stencil = np.array([f(-2 * h, 0.0), f(-h, 0.0), f(0.0, 0.0), f(h, 0.0), f(2 * h, 0.0)])
    weights = np.array([1.0, -4.0, 6.0, -4.0, 1.0])
    return float(weights @ stencil / h**4)


@dataclass
class EtaScanResult:
    entries: list

    def verdicts(self) -> list:
        return [entry["verdict"] for entry in self.entries]


def eta_scan(a: PhaseSpaceFunction, eta_list) -> EtaScanResult:
    """Admissibility of a fixed phase-space function across eta values.

    Each eta quantizes rho_eta = (2 pi eta) Op_eta(a) and tests the density
    axioms; the purity surrogate (2 pi eta) Int a^2 must stay <= 1 for an
    admissible eta, and equals 1 only for a pure state.
    """
    eta_list = list(eta_list)
    if not eta_list:
        raise ParameterError("eta list must not be empty")
    _check_unit_mass(a)
    entries = []
    for eta in eta_list:
        eta = float(eta)
        op = weyl_quantize(a, eta=eta)
        kernel = 2.0 * np.pi * eta * op.kernel
        herm = float(np.max(np.abs(kernel - kernel.conj().T)))
        herm /= float(np.max(np.abs(kernel))) or 1.0
        vals = np.linalg.eigvalsh(0.5 * (kernel + kernel.conj().T)) * op.dx
        scale = float(np.max(np.abs(vals))) or 1.0
        min_eig = float(vals[0])
        trace = float(np.sum(vals))
        surrogate = float(2.0 * np.pi * eta * np.sum(a.values.real**2) * a.area_element)
        psd_ok = min_eig >= -1e-8 * scale
        trace_ok = abs(trace - 1.0) <= 1e-6
        if not (psd_ok and trace_ok and herm <= 1e-8 and surrogate <= 1.0 + 1e-6):
            verdict = "inadmissible"
        elif surrogate >= 1.0 - 1e-6:
            verdict = "pure"
        else:
            verdict = "mixed"
        entries.append(
            {
                "eta": eta,
                "verdict": verdict,
                "min_eigenvalue": min_eig,
                "trace": trace,
                "purity_surrogate": surrogate,
                "hermiticity_residue": herm,
            }
        )
    return EtaScanResult(entries)

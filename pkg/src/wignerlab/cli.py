"""Command-line experiment runner.

Each subcommand runs a self-checking experiment, writes its artifacts plus a
``summary.json`` into the output directory, and exits 0 if every check
passed, 1 if a check failed, and 2 on configuration errors.  Runs are
deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import WignerlabError
from .grid import PhaseSpaceFunction, dual_grid, make_grid
from .quantumness import eta_scan, gaussian_admissible, klm_test
from .serialize import (
    dump_json,
    load_phase_space,
    save_grid_function,
    save_phase_space,
    save_tomograms,
)
from .states import MixedStateSpec, mix, pure_density, state_stats
from .symplectic import MetaplecticSpec, metaplectic_apply
from .tomography import inverse_radon, pauli_pair, radon, reconstruct_density
from .transforms import eta_fourier
from .wavefunctions import coherent_state, hermite_state
from .weyl import displace
from .wigner import cross_wigner, marginals, moyal_overlap, wigner

DEFAULTS = {
    "N": 256,
    "eta": 1.0,
    "seed": 0,
    "x_min": -10.0,
    "x_max": 10.0,
    "out": ".",
    "angles": 180,
    "samples": 40,
    "tol": None,
    "input": None,
    "state": "coherent",
}

EXPERIMENTS = (
    "wigner",
    "moyal",
    "metaplectic",
    "klm",
    "gaussian",
    "eta-scan",
    "tomography",
    "pauli",
)


class Check:
    def __init__(self, name, residual, tolerance, passed=None):
        self.name = name
        self.residual = float(residual)
        self.tolerance = float(tolerance)
        self.passed = bool(residual <= tolerance) if passed is None else bool(passed)

    def as_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
        }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerlab", description="phase-space quantum mechanics experiments"
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file (flags override it)")
        p.add_argument("--N", type=int, dest="N")
        p.add_argument("--eta", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--x-min", type=float, dest="x_min")
        p.add_argument("--x-max", type=float, dest="x_max")
        p.add_argument("--out")
        p.add_argument("--input")
        p.add_argument("--angles", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--state", choices=["coherent", "hermite1", "mixed"])
    return parser


def _resolve_config(args: argparse.Namespace) -> dict:
    config = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as handle:
                file_config = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise WignerlabError(f"cannot read config file {args.config}: {exc}")
        if not isinstance(file_config, dict):
            raise WignerlabError(f"config file {args.config} must hold a JSON object")
        unknown = set(file_config) - set(DEFAULTS)
        if unknown:
            raise WignerlabError(f"unknown config keys: {sorted(unknown)}")
        config.update(file_config)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    if not float(config["eta"]) > 0.0:
        raise WignerlabError(f"eta must be positive, got {config['eta']}")
    if not -(2**63) <= int(config["seed"]) < 2**63:
        raise WignerlabError("seed must fit in 64 bits")
    return config


def _grid(config):
    return make_grid(float(config["x_min"]), float(config["x_max"]), int(config["N"]))


def _tol(config, default):
    return float(config["tol"]) if config["tol"] is not None else default


def _make_state(config, grid, eta):
    kind = config["state"]
    if kind == "coherent":
        return coherent_state(grid, eta)
    if kind == "hermite1":
        return hermite_state(grid, eta, 1)
    spec = MixedStateSpec(
        [(0.5, coherent_state(grid, eta)), (0.5, hermite_state(grid, eta, 1))]
    )
    return spec


def _run_wigner(config, out_dir):
    grid = _grid(config)
    eta = float(config["eta"])
    phi0 = coherent_state(grid, eta)
    result = wigner(phi0)
    xx, pp = result.W.meshes()
    closed = np.exp(-(xx**2 + pp**2) / eta) / (np.pi * eta)
    checks = [
        Check("coherent_closed_form", np.max(np.abs(result.values - closed)), _tol(config, 1e-8)),
        Check("mass", abs(result.values.sum() * result.W.area_element - 1.0), 1e-6),
    ]
    pos, mom = marginals(result)
    target = np.abs(phi0.values) ** 2
    checks.append(Check("marginal_position", np.max(np.abs(pos - target)), 1e-6))
    ft = eta_fourier(phi0)
    checks.append(Check("marginal_momentum", np.max(np.abs(mom - np.abs(ft.values) ** 2)), 1e-6))
    save_phase_space(result.W, os.path.join(out_dir, "wigner.csv"))
    return checks, {}


def _random_gaussian_superposition(rng, grid, eta):
    state = None
    for _ in range(2):
        z0 = rng.uniform(-1.5, 1.5, size=2)
        phase = np.exp(2j * np.pi * rng.uniform())
        term = displace(coherent_state(grid, eta), z0).values * phase
        state = term if state is None else state + term
    from .grid import GridFunction

    return GridFunction(grid, state, eta).normalized()


def _run_moyal(config, out_dir):
    grid = _grid(config)
    eta = float(config["eta"])
    rng = np.random.default_rng(int(config["seed"]))
    worst = 0.0
    for _ in range(20):
        psi = _random_gaussian_superposition(rng, grid, eta)
        w = wigner(psi)
        lhs = 2.0 * np.pi * eta * moyal_overlap(w, w).real
        worst = max(worst, abs(lhs - psi.norm() ** 4))
    checks = [Check("moyal_identity", worst, _tol(config, 1e-7))]
    worst = 0.0
    for _ in range(5):
        quad = [_random_gaussian_superposition(rng, grid, eta) for _ in range(4)]
        lhs = moyal_overlap(cross_wigner(quad[0], quad[1]), cross_wigner(quad[2], quad[3]))
        rhs = quad[0].inner(quad[2]) * np.conj(quad[1].inner(quad[3])) / (2.0 * np.pi * eta)
        worst = max(worst, abs(lhs - rhs))
    checks.append(Check("cross_moyal", worst, _tol(config, 1e-7)))
    return checks, {}


def _run_metaplectic(config, out_dir):
    grid = _grid(config)
    eta = float(config["eta"])
    rng = np.random.default_rng(int(config["seed"]))
    psi = coherent_state(grid, eta)
    worst_match, worst_norm = 0.0, 0.0
    for _ in range(5):
        # draw moderate generating-function blocks, then assemble the free
        # matrix; keeps both evaluation paths inside their resolved regime
        p_blk = rng.uniform(-1.5, 1.5)
        r_blk = rng.uniform(-1.5, 1.5)
        q_blk = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        a, b = r_blk / q_blk, 1.0 / q_blk
        d = p_blk / q_blk
        c = (a * d - 1.0) / b
        S = np.array([[a, b], [c, d]])
        direct = metaplectic_apply(MetaplecticSpec.free(S), psi)
        word = metaplectic_apply(MetaplecticSpec.free_as_word(S), psi)
        worst_match = max(
            worst_match, float(np.max(np.abs(direct.values - word.values)))
        )
        worst_norm = max(worst_norm, abs(direct.norm() - 1.0))
    checks = [
        Check("word_vs_quadrature", worst_match, _tol(config, 1e-6)),
        Check("unitarity", worst_norm, 1e-7),
    ]
    return checks, {}


def _run_klm(config, out_dir):
    eta = float(config["eta"])
    if config["input"]:
        symbol = load_phase_space(config["input"])
    else:
        grid = _grid(config)
        symbol = wigner(coherent_state(grid, 1.0)).W
    report = klm_test(symbol, eta, samples=int(config["samples"]), seed=int(config["seed"]))
    checks = [
        Check(
            "klm_min_eigenvalue",
            max(0.0, -report.min_eigenvalue),
            max(report.tolerance, 1e-30),
            passed=report.passed,
        )
    ]
    dump_json(
        {
            "schema": 1,
            "min_eigenvalue": report.min_eigenvalue,
            "hessian_min_eigenvalue": report.hessian_min_eigenvalue,
            "continuity_residual": report.continuity_residual,
            "verdict": report.verdict,
            "seed": report.seed,
            "points": report.points,
        },
        os.path.join(out_dir, "klm_report.json"),
    )
    return checks, {}


def _run_gaussian(config, out_dir):
    eta = float(config["eta"])
    rng = np.random.default_rng(int(config["seed"]))
    disagreements = 0
    for _ in range(200):
        n = int(rng.integers(1, 3))
        root = rng.normal(size=(2 * n, 2 * n))
        sigma = root @ root.T + 1e-3 * np.eye(2 * n)
        sigma *= eta / np.max(np.abs(sigma))
        sigma *= rng.uniform(0.2, 4.0)
        verdict = gaussian_admissible(sigma, eta)
        lam_ok = abs(eta) <= 2.0 * verdict["lambda_min"]
        matrix_ok = verdict["matrix_min_eigenvalue"] >= -1e-9 * max(1.0, np.max(np.abs(sigma)))
        if lam_ok != matrix_ok:
            disagreements += 1
    boundary = gaussian_admissible(np.eye(2) * eta / 2.0, eta)
    checks = [
        Check("criterion_equivalence", disagreements, 0.5),
        Check("boundary_admissible", 0.0 if boundary["admissible"] else 1.0, 0.5),
    ]
    return checks, {}


def _run_eta_scan(config, out_dir):
    grid = _grid(config)
    symbol = wigner(coherent_state(grid, 1.0)).W
    result = eta_scan(symbol, [0.5, 1.0, 1.5])
    expected = ["mixed", "pure", "inadmissible"]
    ok = result.verdicts() == expected
    checks = [Check("eta_scan_verdicts", 0.0 if ok else 1.0, 0.5)]
    dump_json({"schema": 1, "entries": result.entries}, os.path.join(out_dir, "eta_scan.json"))
    return checks, {}


def _run_tomography(config, out_dir):
    grid = _grid(config)
    eta = float(config["eta"])
    source = _make_state(config, grid, eta)
    w = wigner(source)
    angles = np.linspace(0.0, np.pi, int(config["angles"]), endpoint=False)
    tomo = radon(w, angles)
    recon = inverse_radon(tomo)
    truth = w.values
    l2 = float(
        np.sqrt(np.sum((recon.values.real - truth) ** 2) / np.sum(truth**2))
    )
    checks = [Check("reconstruction_l2", l2, _tol(config, 2e-2))]
    density, info = reconstruct_density(tomo, eta)
    if config["state"] == "coherent":
        phi0 = coherent_state(grid, eta)
        kernel = density.op.kernel if density is not None else None
        if kernel is None:
            fidelity = 0.0
        else:
            fidelity = float(
                np.real(
                    phi0.values.conj() @ kernel @ phi0.values * grid.dx**2
                )
            )
        checks.append(Check("fidelity", 1.0 - fidelity, 2e-2, passed=fidelity >= 0.98))
    save_tomograms(tomo, os.path.join(out_dir, "tomograms.csv"))
    save_phase_space(recon, os.path.join(out_dir, "reconstruction.csv"))
    return checks, {}


def _run_pauli(config, out_dir):
    grid = _grid(config)
    eta = float(config["eta"])
    psi1, psi2 = pauli_pair(1.0 + 1.0j, grid, eta)
    overlap = abs(psi1.inner(psi2)) ** 2
    checks = [Check("overlap", abs(overlap - 1.0 / np.sqrt(2.0)), _tol(config, 1e-6))]
    pos = np.max(np.abs(np.abs(psi1.values) ** 2 - np.abs(psi2.values) ** 2))
    ft1, ft2 = eta_fourier(psi1), eta_fourier(psi2)
    mom = np.max(np.abs(np.abs(ft1.values) ** 2 - np.abs(ft2.values) ** 2))
    checks.append(Check("equal_marginals", max(pos, mom), 1e-10))
    save_grid_function(psi1, os.path.join(out_dir, "pauli_psi1.csv"))
    save_grid_function(psi2, os.path.join(out_dir, "pauli_psi2.csv"))
    return checks, {}


RUNNERS = {
    "wigner": _run_wigner,
    "moyal": _run_moyal,
    "metaplectic": _run_metaplectic,
    "klm": _run_klm,
    "gaussian": _run_gaussian,
    "eta-scan": _run_eta_scan,
    "tomography": _run_tomography,
    "pauli": _run_pauli,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(args)
        out_dir = str(config["out"])
        os.makedirs(out_dir, exist_ok=True)
        checks, _ = RUNNERS[args.experiment](config, out_dir)
    except WignerlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    passed = all(check.passed for check in checks)
    summary = {
        "schema": 1,
        "experiment": args.experiment,
        "config": {key: config[key] for key in sorted(DEFAULTS)},
        "checks": [check.as_dict() for check in checks],
        "passed": passed,
    }
    dump_json(summary, os.path.join(out_dir, "summary.json"))
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: residual {check.residual:.3e} (tol {check.tolerance:.3e})")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())

import json

import numpy as np
import pytest

from wignerlab import coherent_state, make_grid, save_phase_space, wigner
from wignerlab.cli import main

ETA = 1.0


def _run(argv, capsys=None):
    code = main(argv)
    return code


def test_wigner_experiment_passes(tmp_path, capsys):
    code = main(["wigner", "--N", "64", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS coherent_closed_form" in out
    assert "FAIL" not in out
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["schema"] == 1
    assert summary["experiment"] == "wigner"
    assert summary["passed"] is True
    assert (tmp_path / "wigner.csv").exists()


def test_moyal_experiment_passes(tmp_path):
    assert main(["moyal", "--N", "64", "--out", str(tmp_path)]) == 0


def test_metaplectic_experiment_passes(tmp_path):
    assert main(["metaplectic", "--N", "128", "--out", str(tmp_path)]) == 0


def test_gaussian_experiment_passes(tmp_path):
    assert main(["gaussian", "--out", str(tmp_path)]) == 0


def test_eta_scan_experiment_passes(tmp_path):
    half = 0.5 * np.sqrt(2.0 * np.pi * 128)
    code = main(
        [
            "eta-scan",
            "--N", "128",
            "--x-min", str(-half),
            "--x-max", str(half),
            "--out", str(tmp_path),
        ]
    )
    assert code == 0
    scan = json.loads((tmp_path / "eta_scan.json").read_text())
    assert [entry["verdict"] for entry in scan["entries"]] == [
        "mixed", "pure", "inadmissible",
    ]


def test_klm_failure_exit_code(tmp_path, capsys):
    # a coherent-state distribution is not admissible at larger eta
    code = main(["klm", "--N", "128", "--eta", "1.5", "--out", str(tmp_path)])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out
    report = json.loads((tmp_path / "klm_report.json").read_text())
    assert report["verdict"] == "violation"


def test_klm_reads_input_file(tmp_path):
    half = 0.5 * np.sqrt(2.0 * np.pi * 128)
    grid = make_grid(-half, half, 128)
    W = wigner(coherent_state(grid, ETA)).W
    path = tmp_path / "input.csv"
    save_phase_space(W, path)
    code = main(["klm", "--input", str(path), "--out", str(tmp_path)])
    assert code == 0


def test_config_file_and_flag_precedence(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"N": 64, "out": str(tmp_path / "from_file")}))
    out_dir = tmp_path / "from_flag"
    code = main(["wigner", "--config", str(config), "--out", str(out_dir)])
    assert code == 0
    # the flag overrides the config file
    assert (out_dir / "summary.json").exists()
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["config"]["N"] == 64


def test_unknown_config_key_is_configuration_error(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"bogus": 1}))
    code = main(["wigner", "--config", str(config), "--out", str(tmp_path)])
    assert code == 2
    assert "unknown config keys" in capsys.readouterr().err


def test_bad_eta_is_configuration_error(tmp_path, capsys):
    code = main(["wigner", "--eta", "-1.0", "--out", str(tmp_path)])
    assert code == 2
    assert "eta must be positive" in capsys.readouterr().err


def test_seeded_runs_are_deterministic(tmp_path):
    out1, out2 = tmp_path / "one", tmp_path / "two"
    assert main(["moyal", "--N", "64", "--seed", "7", "--out", str(out1)]) == 0
    assert main(["moyal", "--N", "64", "--seed", "7", "--out", str(out2)]) == 0
    assert (out1 / "summary.json").read_bytes() != b""
    s1 = json.loads((out1 / "summary.json").read_text())
    s2 = json.loads((out2 / "summary.json").read_text())
    s1["config"]["out"] = s2["config"]["out"] = ""
    assert s1 == s2


def test_tomography_experiment_passes(tmp_path):
    half = 0.5 * np.sqrt(2.0 * np.pi * 128)
    code = main(
        [
            "tomography",
            "--N", "128",
            "--x-min", str(-half),
            "--x-max", str(half),
            "--angles", "180",
            "--out", str(tmp_path),
        ]
    )
    assert code == 0
    assert (tmp_path / "tomograms.csv").exists()
    assert (tmp_path / "reconstruction.csv").exists()


def test_pauli_experiment_passes(tmp_path):
    assert main(["pauli", "--N", "128", "--out", str(tmp_path)]) == 0

"""End-to-end tests for the command-line front end and its delimited output."""

import json
import subprocess
import sys

import numpy as np
import pytest

from awcn import ChannelParams, lb_epi, mi_antipodal, ub_cpuc
from awcn.cli import COLUMNS, CliError, _parse_gamma_grid, main


def run_cli(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_gamma_grid_parsing():
    g = _parse_gamma_grid("0.01:1000:25")
    assert g.size == 126
    assert g[0] == pytest.approx(0.01, rel=1e-12)
    assert g[-1] == pytest.approx(1000.0, rel=1e-12)
    g2 = _parse_gamma_grid("1:100:1")
    np.testing.assert_allclose(g2, [1.0, 10.0, 100.0], rtol=1e-12)
    for bad in ("1:100", "0:10:5", "10:1:5", "1:10:0", "a:b:c"):
        with pytest.raises(CliError):
            _parse_gamma_grid(bad)


def test_bounds_csv_schema_and_formatting(capsys):
    rc, out, err = run_cli(capsys, ["bounds", "--gamma-grid", "1:100:1"])
    assert rc == 0 and err == ""
    lines = out.strip().split("\n")
    assert lines[0] == ",".join(COLUMNS["bounds"])
    assert len(lines) == 4
    row1 = lines[1].split(",")
    cp = ChannelParams.from_gamma(1.0)
    assert row1[0] == "1"
    assert row1[1] == f"{lb_epi(cp):.9g}"
    assert row1[3] == f"{ub_cpuc(cp):.9g}"
    assert row1[4] == f"{mi_antipodal(cp):.9g}"


def test_bounds_json_mirrors_csv(capsys):
    rc, csv_out, _ = run_cli(capsys, ["bounds", "--gamma-grid", "1:10:1"])
    assert rc == 0
    rc, json_out, _ = run_cli(
        capsys, ["bounds", "--gamma-grid", "1:10:1", "--format", "json"]
    )
    assert rc == 0
    recs = json.loads(json_out)
    assert len(recs) == 2
    assert list(recs[0]) == list(COLUMNS["bounds"])
    csv_rows = [r.split(",") for r in csv_out.strip().split("\n")[1:]]
    for rec, cells in zip(recs, csv_rows):
        for key, cell in zip(COLUMNS["bounds"], cells):
            assert f"{rec[key]:.9g}" == cell


def test_ba_csv_run(capsys):
    rc, out, err = run_cli(
        capsys, ["ba", "--gamma-grid", "1:10:1", "--tol", "3e-4"]
    )
    assert rc == 0 and err == ""
    lines = out.strip().split("\n")
    assert lines[0] == ",".join(COLUMNS["ba"])
    assert len(lines) == 3
    for line, gamma in zip(lines[1:], (1.0, 10.0)):
        cells = line.split(",")
        assert float(cells[0]) == pytest.approx(gamma, rel=1e-9)
        rate, cost = float(cells[1]), float(cells[2])
        cp = ChannelParams.from_gamma(gamma)
        assert lb_epi(cp) - 0.02 <= rate <= ub_cpuc(cp) + 1e-3
        assert abs(cost - gamma) <= 5e-3 * gamma
        assert int(cells[3]) > 0
        assert cells[4] == "true"


def test_gmi_csv_run(capsys):
    rc, out, err = run_cli(
        capsys,
        ["gmi", "--snr-grid", "0,10", "--lambda2-list", "9",
         "--mc-samples", "20000", "--quad-nodes", "64"],
    )
    assert rc == 0 and err == ""
    lines = out.strip().split("\n")
    assert lines[0] == ",".join(COLUMNS["gmi"])
    assert len(lines) == 3
    zero = lines[1].split(",")
    assert float(zero[0]) == 0.0
    assert float(zero[2]) == 0.0
    ten = lines[2].split(",")
    gmi_val, se, cap = float(ten[2]), float(ten[4]), float(ten[5])
    assert cap == pytest.approx(0.5 * np.log1p(10.0), rel=1e-8)
    assert 0.0 < gmi_val <= cap + 3.0 * se


def test_decode_sim_csv_run(capsys):
    rc, out, err = run_cli(
        capsys,
        ["decode-sim", "--ensemble", "antipodal", "--block-lens", "4,10",
         "--pairs", "2000"],
    )
    assert rc == 0 and err == ""
    lines = out.strip().split("\n")
    assert lines[0] == ",".join(COLUMNS["decode-sim"])
    assert len(lines) == 3
    for line in lines[1:]:
        cells = line.split(",")
        assert cells[0] == "antipodal"
        assert float(cells[5]) == pytest.approx(0.25, abs=1e-12)
        err_hat, se = float(cells[3]), float(cells[4])
        assert 0.0 < err_hat < 0.5
        assert se > 0.0


def test_decode_sim_ml_has_no_limit(capsys):
    rc, out, _ = run_cli(
        capsys,
        ["decode-sim", "--metric", "ml", "--ensemble", "antipodal",
         "--block-lens", "4", "--pairs", "500"],
    )
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[1].endswith(",")  # empty analytic_limit cell
    rc, out, _ = run_cli(
        capsys,
        ["decode-sim", "--metric", "ml", "--ensemble", "antipodal",
         "--block-lens", "4", "--pairs", "500", "--format", "json"],
    )
    assert rc == 0
    assert json.loads(out)[0]["analytic_limit"] is None


def test_vector_csv_run(capsys):
    rc, out, err = run_cli(
        capsys, ["vector", "--power", "1,10", "--mc-samples", "50000"]
    )
    assert rc == 0 and err == ""
    lines = out.strip().split("\n")
    assert lines[0] == ",".join(COLUMNS["vector"])
    assert len(lines) == 3
    # h and gain_bracket are semicolon-packed so the CSV stays flat.
    cells = lines[1].split(",")
    assert cells[0] == "1;2;3"
    assert cells[5] == "9;14"
    assert float(cells[4]) == pytest.approx(3.5, rel=1e-9)
    assert float(cells[2]) <= float(cells[3]) + 0.01


def test_seed_determinism_and_sensitivity(capsys):
    args = ["decode-sim", "--ensemble", "gaussian", "--block-lens", "8",
            "--pairs", "3000"]
    _, out1, _ = run_cli(capsys, args)
    _, out2, _ = run_cli(capsys, args)
    assert out1 == out2
    _, out3, _ = run_cli(capsys, args + ["--seed", "43"])
    assert out3 != out1


def test_out_file_and_plot(tmp_path, capsys):
    out = tmp_path / "table.csv"
    rc, stdout, err = run_cli(
        capsys,
        ["bounds", "--gamma-grid", "1:100:2", "--out", str(out), "--plot"],
    )
    assert rc == 0 and stdout == "" and err == ""
    text = out.read_text()
    assert text.startswith(",".join(COLUMNS["bounds"]))
    png = tmp_path / "table.png"
    assert png.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_requires_out(capsys):
    rc, _, err = run_cli(capsys, ["bounds", "--gamma-grid", "1:10:1", "--plot"])
    assert rc == 2
    rec = json.loads(err)
    assert rec["error"] == "validation"
    assert "--out" in rec["message"]


def test_validation_exit_codes(capsys):
    rc, _, err = run_cli(capsys, ["bounds", "--gamma-grid", "10:1:5"])
    assert rc == 2
    assert json.loads(err)["error"] == "validation"
    rc, _, err = run_cli(capsys, ["ba", "--gamma-grid", "1:10:1", "--lambda", "-1"])
    assert rc == 2
    rc, _, err = run_cli(
        capsys,
        ["bounds", "--gamma-grid", "1:10:1", "--out", "/nonexistent-dir/x.csv"],
    )
    assert rc == 2
    assert "cannot write" in json.loads(err)["message"]


def test_nonconvergence_exit_code(capsys):
    rc, out, err = run_cli(
        capsys, ["bounds", "--gamma-grid", "1:10:1", "--tol", "1e-16"]
    )
    assert rc == 3 and out == ""
    rec = json.loads(err)
    assert rec["error"] == "non-convergence"
    assert "accuracy" in rec["message"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "awcn.cli", "--help"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    for sub in ("bounds", "ba", "gmi", "decode-sim", "vector"):
        assert sub in proc.stdout


def test_unknown_command_exits_2():
    proc = subprocess.run(
        [sys.executable, "-m", "awcn.cli", "frobnicate"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 2

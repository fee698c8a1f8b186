"""Command-line surface: config loading, exit codes and deterministic run products."""

from __future__ import annotations

import csv
import json
import math

import pytest

from app.cli.config import ConfigError, load_run_config
from app.cli.run import EXIT_CONFIG, EXIT_OK, EXIT_PRECONDITION, EXIT_SUITE, main
from app.config.limits import NumericLimitError, NumericLimitsEnforcer
from app.config.settings import reset_settings


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


FAST_VERIFY = ["--intertwiner-points", "256", "--reduction-points", "128"]


# ---------- config ----------

def test_yaml_config_with_overrides(tmp_path):
    path = tmp_path / "spectrum.yaml"
    path.write_text("p: 3\nq: 8\nc: 0.5\nn_phase: 12\n")
    config = load_run_config("spectrum", path, {"c": 2.0, "seed": None})
    assert (config.p, config.q, config.n_phase) == (3, 8, 12)
    assert config.c == 2.0


def test_witness_lambda_key(tmp_path):
    path = tmp_path / "witness.yaml"
    path.write_text("lambda: 0.25\nn_max: 10\n")
    assert load_run_config("witness", path).lambda_ == 0.25
    assert load_run_config("witness", None, {"lambda_": -0.5}).lambda_ == -0.5
    assert load_run_config("witness", path).echo()["lambda"] == 0.25


@pytest.mark.parametrize("body", [
    "colour: red\n",
    "q: 0\n",
    "q_list:\n  - [1, 2]\n",
    "- 1\n- 2\n",
    "subcommand: butterfly\n",
])
def test_bad_config_rejected(tmp_path, body):
    path = tmp_path / "bad.yaml"
    path.write_text(body)
    with pytest.raises(ConfigError):
        load_run_config("spectrum", path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_run_config("verify", tmp_path / "absent.yaml")


def test_tabulated_potential_needs_table():
    with pytest.raises(ConfigError):
        load_run_config("oscillator", None, {"potential": "tabulated"})


# ---------- exit codes ----------

def test_bad_key_exits_with_config_code(tmp_path, isolated_settings):
    path = tmp_path / "bad.yaml"
    path.write_text("n_phase: 8\nunknown_key: 1\n")
    assert main(["spectrum", "--config", str(path)]) == EXIT_CONFIG


def test_verify_passes(tmp_path, isolated_settings):
    out = tmp_path / "verify"
    assert main(["verify", "--seed", "7", "--output-dir", str(out), *FAST_VERIFY]) == EXIT_OK
    report = json.loads((out / "verify_report.json").read_text())
    assert report["passed"] is True
    assert report["first_failure"] is None
    assert all(s["passed"] for s in report["suites"])
    assert all(s["anchor"] for s in report["suites"])
    manifest = json.loads((out / "run_manifest.json").read_text())
    assert manifest["exit_code"] == 0
    assert set(manifest["summary"]["timings_ms"]) == {s["name"] for s in report["suites"]}


def test_corrupted_omega_fails_verify(tmp_path, isolated_settings):
    out = tmp_path / "verify"
    assert main(["verify", "--corrupt-omega", "--output-dir", str(out), *FAST_VERIFY]) == EXIT_SUITE
    report = json.loads((out / "verify_report.json").read_text())
    assert report["passed"] is False
    assert report["first_failure"] == "ccr_algebra"


def test_non_coprime_spectrum_is_a_precondition_failure(tmp_path, isolated_settings):
    assert main(["spectrum", "--p", "2", "--q", "4", "--output-dir", str(tmp_path)]) == EXIT_PRECONDITION


def test_odd_periodic_grid_is_a_config_error(tmp_path, isolated_settings):
    assert main(["oscillator", "--n-points", "15", "--output-dir", str(tmp_path)]) == EXIT_CONFIG


def test_lambda_outside_gap_is_a_precondition_failure(tmp_path, isolated_settings):
    assert main(["witness", "--lambda", "1.5", "--output-dir", str(tmp_path)]) == EXIT_PRECONDITION


def written_files(out):
    return sorted(p.name for p in out.iterdir()) if out.exists() else []


def test_failed_butterfly_writes_nothing(tmp_path, isolated_settings):
    out = tmp_path / "fly"
    code = main(["butterfly", "--q-max", "3", "--c", "1", "--n-phase", "2",
                 "--q-list", "257", "--output-dir", str(out)])
    assert code == EXIT_PRECONDITION
    assert written_files(out) == []


def test_failed_dump_writes_nothing(tmp_path, isolated_settings):
    out = tmp_path / "spectrum"
    assert main(["spectrum", "--p", "7", "--q", "300", "--dump-matrix", "--output-dir", str(out)]) == EXIT_PRECONDITION
    assert written_files(out) == []


def test_large_periodic_grid_is_capped(tmp_path, isolated_settings):
    out = tmp_path / "osc"
    assert main(["oscillator", "--n-points", "2048", "--output-dir", str(out)]) == EXIT_PRECONDITION
    assert written_files(out) == []


def test_periodic_cap_follows_settings(monkeypatch, isolated_settings):
    monkeypatch.setenv("DCCR_LIMITS", '{"max_periodic_dim": 64}')
    reset_settings()
    with pytest.raises(NumericLimitError, match="truncated mode"):
        NumericLimitsEnforcer().check_periodic_dim(128)
    NumericLimitsEnforcer().check_periodic_dim(64)


# ---------- run products ----------

def test_default_output_dir(isolated_settings):
    assert main(["witness", "--n-max", "5", "--n-samples", "100"]) == EXIT_OK
    assert (isolated_settings / "witness" / "witness.csv").exists()


def test_spectrum_outputs(tmp_path, isolated_settings):
    out = tmp_path / "spectrum"
    assert main(["spectrum", "--p", "13", "--q", "34", "--c", "0.5", "--output-dir", str(out), "--dump-matrix"]) == EXIT_OK
    bands = read_rows(out / "bands.csv")
    assert bands[0] == ["p", "q", "flux", "band_lo", "band_hi"]
    assert len(bands) == 1 + 34
    measures = read_rows(out / "measures.csv")
    assert abs(float(measures[1][3]) - 2.0) <= 0.3
    matrix = read_rows(out / "matrix.csv")
    assert len(matrix) == 1 + 34 and len(matrix[0]) == 2 * 34
    manifest = json.loads((out / "run_manifest.json").read_text())
    assert manifest["files"] == {"bands.csv": 34, "measures.csv": 1, "matrix.csv": 34}


def test_runs_are_byte_identical(tmp_path, isolated_settings):
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        assert main(["butterfly", "--q-max", "8", "--c", "1", "--n-phase", "6",
                     "--q-list", "3,5,8", "--output-dir", str(out)]) == EXIT_OK
    for name in ("butterfly.csv", "measures.csv", "measure_trend.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_verify_report_is_byte_identical(tmp_path, isolated_settings):
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        assert main(["verify", "--seed", "3", "--output-dir", str(out), *FAST_VERIFY]) == EXIT_OK
    assert (first / "verify_report.json").read_bytes() == (second / "verify_report.json").read_bytes()


def test_butterfly_row_counts(tmp_path, isolated_settings):
    out = tmp_path / "fly"
    assert main(["butterfly", "--q-max", "20", "--c", "1", "--n-phase", "4",
                 "--q-list", "5,8", "--output-dir", str(out)]) == EXIT_OK
    rows = read_rows(out / "butterfly.csv")[1:]
    assert len(rows) == sum(q * euler_phi(q) for q in range(1, 21))
    assert len(read_rows(out / "measures.csv")) == 1 + sum(euler_phi(q) for q in range(1, 21))
    fluxes = [float(r[2]) for r in rows]
    assert min(fluxes) == 0.0 and max(fluxes) < 1.0


def test_truncated_oscillator(tmp_path, isolated_settings):
    out = tmp_path / "osc"
    assert main(["oscillator", "--mode", "truncated", "--n-points", "1024", "--half-length", "8",
                 "--tau", "0.1", "--n-levels", "3", "--output-dir", str(out)]) == EXIT_OK
    rows = read_rows(out / "eigenvalues.csv")
    assert rows[0] == ["index", "value"]
    values = [float(r[1]) for r in rows[1:]]
    assert len(values) == 3
    assert abs(values[0] - 0.5) <= 1e-2
    assert values == sorted(values)


def test_periodic_oscillator(tmp_path, isolated_settings):
    out = tmp_path / "osc"
    assert main(["oscillator", "--n-points", "256", "--output-dir", str(out)]) == EXIT_OK
    values = [float(r[1]) for r in read_rows(out / "eigenvalues.csv")[1:]]
    assert len(values) == 5
    assert values == sorted(values)


def test_witness_outputs(tmp_path, isolated_settings):
    out = tmp_path / "witness"
    assert main(["witness", "--lambda", "0", "--n-max", "25", "--output-dir", str(out)]) == EXIT_OK
    rows = read_rows(out / "witness.csv")
    assert rows[0] == ["n", "sup_X", "value", "ratio"]
    assert len(rows) == 26
    summary = json.loads((out / "witness_summary.json").read_text())
    assert summary["rho"] == pytest.approx(3.0)
    assert abs(summary["growth_base"] - 3.0) <= 1e-3

"""Tests for the command line"""
import sys
from pathlib import Path

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import json
import math

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from app.cli import main
from app.formatters import SWEEP_COLUMNS
from services.experiment_runner import ExperimentRunner

@pytest.fixture
def runner():
    return CliRunner()

@pytest.fixture
def cosine_file(tmp_path):
    grid = np.linspace(0.0, 2.0 * math.pi, 4096)
    path = tmp_path / "cos.csv"
    path.write_text("x,u\n" + "\n".join(f"{x:.17g},{u:.17g}" for x, u in zip(grid, np.cos(grid))) + "\n")
    return path

def test_q_of_cosine(runner, cosine_file):
    result = runner.invoke(main, ["q", str(cosine_file), "--periodic", "--format", "json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["Q"] == pytest.approx(4.0 / 3.0, abs=1e-6)
    assert payload["parts_residual"] <= 1e-6
    assert payload["boundary_term"] is None
    assert payload["oracles"][0]["name"] == "square_completion"

def test_q_csv_output(runner, cosine_file, tmp_path):
    out = tmp_path / "q.csv"
    result = runner.invoke(main, ["q", str(cosine_file), "--periodic", "--out", str(out)])
    assert result.exit_code == 0, result.output
    text = out.read_text()
    assert "# Q: 1.33333" in text
    assert text.splitlines()[-1].startswith("square_completion")

def test_q_rejects_non_increasing_x(runner, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x,u\n0,1\n1,2\n3,1\n2,0\n4,1\n5,2\n")
    result = runner.invoke(main, ["q", str(path)])
    assert result.exit_code == 2
    assert "line 5" in result.output

def test_q_of_zero_function(runner, tmp_path):
    path = tmp_path / "zero.csv"
    path.write_text("\n".join(f"{i},0" for i in range(9)) + "\n")
    result = runner.invoke(main, ["q", str(path), "--periodic"])
    assert result.exit_code == 2
    assert "undefined quotient" in result.output

def test_find_infimum_invalid_bracket(runner):
    result = runner.invoke(main, ["find-infimum", "--bracket", "0.20", "0.24"])
    assert result.exit_code != 0
    assert "bracket invalid" in result.output

def test_find_infimum_json(runner):
    result = runner.invoke(main, ["find-infimum", "--format", "json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert set(payload) == {"I", "T", "a", "A", "B", "C", "oracles"}
    assert payload["I"] == pytest.approx(-0.1580, abs=5e-4)
    assert payload["T"] == pytest.approx(3.43963, abs=1e-3)
    assert all(o["passed"] for o in payload["oracles"])

def test_profile_round_trip(runner, tmp_path):
    """Profile samples fed back into q reproduce I through the finite-difference path"""
    out = tmp_path / "profile.csv"
    result = runner.invoke(main, ["profile", "--out", str(out)])
    assert result.exit_code == 0, result.output

    lines = out.read_text().splitlines()
    header = dict(line[2:].split(": ", 1) for line in lines if line.startswith("#"))
    I_value = float(header["I"])
    assert lines[len(header)] == "x,u,du,d2u,d3u,H_residual"
    assert len(lines) == len(header) + 1 + 2001

    result = runner.invoke(main, ["q", str(out), "--periodic", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["Q"] == pytest.approx(I_value, abs=1e-3)

def test_verify_with_injected_constant(runner):
    result = runner.invoke(main, ["verify", "--inject-i", "-0.2", "--format", "json"])
    assert result.exit_code == 1
    assert "identity_value" in result.output

def test_q_ragged_row_is_an_input_error(runner, tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("x,u\n0,1\n1,2\n2,1,7\n3,4\n4,5\n")
    result = runner.invoke(main, ["q", str(path)])
    assert result.exit_code == 2
    assert "line 4" in result.output

def test_q_undecodable_file_is_an_input_error(runner, tmp_path):
    path = tmp_path / "binary.csv"
    path.write_bytes(b"x,u\n0,1\n1,\xff\n2,3\n3,4\n4,5\n")
    result = runner.invoke(main, ["q", str(path)])
    assert result.exit_code == 2
    assert "cannot read" in result.output

def test_sweep_with_worker_processes(runner, tmp_path):
    out = tmp_path / "sweep.csv"
    result = runner.invoke(main, [
        "sweep", "--from", "0.150", "--to", "0.154", "--step", "0.002", "--threads", "2", "--out", str(out)
    ])
    assert result.exit_code == 0, result.output

    text = out.read_text()
    assert "# min_J: " in text
    frame = pd.read_csv(out, comment="#")
    assert list(frame.columns) == SWEEP_COLUMNS
    assert list(frame["lambda"]) == pytest.approx([0.150, 0.152, 0.154])
    assert (frame["status"] == "ok").all()
    assert (frame["J"] <= frame["J_tilde"] + 1e-6).all()
    assert (frame["J"] >= -0.25).all()

def test_sweep_json_matches_serial_order(runner):
    result = runner.invoke(main, [
        "sweep", "--from", "0.150", "--to", "0.152", "--step", "0.002", "--format", "json"
    ])
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)
    assert [row["lambda"] for row in rows] == pytest.approx([0.150, 0.152])

def test_default_sweep_grid():
    runner = ExperimentRunner()
    runner.initialize()
    grid = runner.sweep_lambdas()
    assert len(grid) == 54
    assert grid[0] == pytest.approx(0.142)
    assert grid[-1] == pytest.approx(0.248)

def test_verify_defaults_pass(runner):
    result = runner.invoke(main, ["verify", "--format", "json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["injected"] is False
    assert all(o["passed"] for o in payload["oracles"])

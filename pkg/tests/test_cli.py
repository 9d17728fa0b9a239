import math
import subprocess
import sys
from pathlib import Path

import pytest

from qfog.cli import main, parse_number

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize(
    "text, expected",
    [("1.5", 1.5), ("pi", math.pi), ("0.5844pi", 0.5844 * math.pi), ("pi/2", math.pi / 2),
     ("-2*pi", -2 * math.pi), ("1e-3", 1e-3), ("3pi/4", 0.75 * math.pi)],
)
def test_parse_number(text, expected):
    assert parse_number(text) == pytest.approx(expected, rel=1e-15)


def test_sweep_golden_file(tmp_path):
    out = tmp_path / "r.csv"
    args = ["sweep", "--mode", "ratio-cs", "--m", "10", "--alpha", "1", "--y", "1",
            "--gamma", "1", "--from", "0", "--to", "2pi", "--steps", "41", "--out", str(out)]
    assert main(args) == 0
    data = out.read_bytes()
    assert data == (DATA / "golden_ratio_cs_m10.csv").read_bytes()
    assert b"\r" not in data
    assert all(not line.endswith(b",") for line in data.splitlines())


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep settings\nmode = ratio-cs\nm = 0\nsteps = 7\nformat=csv\n", encoding="utf-8")
    out = tmp_path / "a.csv"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 8
    assert lines[1].split(",")[3] == "0"
    assert main(["sweep", "--config", str(cfg), "--m", "2", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1].split(",")[3] == "2"


def test_config_errors_exit_2(tmp_path, capsys):
    assert main(["sweep", "--gamma", "0"]) == 2
    assert "gamma" in capsys.readouterr().err
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["sweep", "--config", str(cfg)]) == 2
    assert "colour" in capsys.readouterr().err
    assert main(["sweep", "--steps", "many"]) == 2
    assert main(["sweep", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_optimize_output(capsys):
    assert main(["optimize", "--mode", "ratio-cs", "--m", "10", "--from", "0.5pi", "--to", "0.7pi",
                 "--eval-phi", "0.5844pi"]) == 0
    out = dict(line.split("=", 1) for line in capsys.readouterr().out.splitlines() if line.count("=") == 1)
    assert float(out["min"]) <= 2e-3
    assert abs(float(out["phi_over_pi"]) - 0.5844) < 1e-3


def test_optimize_no_minimum_exit_2():
    assert main(["optimize", "--m", "0"]) == 2


def test_validate_command(capsys):
    assert main(["validate", "--max-m", "3", "--alphas", "0.5,1"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert main(["validate", "--dim", "8", "--alphas", "2"]) == 2


def test_validate_zero():
    assert main(["validate", "--max-m", "0"]) == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qfog", "sweep", "--mode", "ss-sensitivity", "--steps", "5"],
        capture_output=True, text=True, check=True,
    )
    lines = proc.stdout.splitlines()
    assert lines[0] == "phi,sensitivity,gamma,m,alpha,y"
    assert lines[2].split(",")[1] == "inf"


def test_validate_failure_exit_1(monkeypatch, capsys):
    from qfog import cli
    from qfog.sweep import Check

    monkeypatch.setattr(cli, "validate", lambda **kw: [Check("ok", 0.0, 1e-9), Check("broken", 1e-3, 1e-9)])
    assert main(["validate"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  broken" in out
    assert "1/2 checks passed" in out

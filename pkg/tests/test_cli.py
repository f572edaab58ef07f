import json
import math
from pathlib import Path

import pytest

from dloop.cli import _real, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_figure_to_stdout(capsys, monkeypatch):
    monkeypatch.delenv("DLOOP_OUTPUT_DIR", raising=False)
    code, out, _ = run(capsys, "figure", "--id", "fig5")
    assert code == 0
    assert out == (GOLDEN / "fig5.csv").read_text()


def test_figure_json(capsys, monkeypatch):
    monkeypatch.delenv("DLOOP_OUTPUT_DIR", raising=False)
    code, out, _ = run(capsys, "figure", "--id", "fig4", "--format", "json")
    assert code == 0
    assert out == (GOLDEN / "fig4.json").read_text()


def test_figure_out_path(capsys, tmp_path):
    target = tmp_path / "sub" / "f.csv"
    code, _, _ = run(capsys, "figure", "--id", "fig7", "--out", str(target))
    assert code == 0
    assert target.read_text() == (GOLDEN / "fig7.csv").read_text()


def test_output_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DLOOP_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "figure", "--id", "fig8c")
    assert code == 0 and out == ""
    assert (tmp_path / "fig8c.csv").read_text() == (GOLDEN / "fig8c.csv").read_text()


def test_unknown_figure_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["figure", "--id", "fig9"])
    assert exc.value.code == 2


def test_sweep(capsys, monkeypatch):
    monkeypatch.delenv("DLOOP_OUTPUT_DIR", raising=False)
    code, out, _ = run(capsys, "sweep", "--var", "t_d", "--from", "0", "--to", "1", "--steps", "5",
                       "--eps", "0")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6
    assert lines[2].split(",")[3] == "0.470588235"


def test_sweep_degenerate_range(capsys):
    code, _, err = run(capsys, "sweep", "--var", "chi_d", "--from", "1", "--to", "1", "--steps", "2")
    assert code == 2 and "from < to" in err


def test_intensity(capsys):
    code, out, _ = run(capsys, "intensity", "--format", "json")
    vals = json.loads(out)
    assert code == 0
    assert vals["K0"] == pytest.approx(711 * math.pi / 2048, rel=1e-14)
    assert vals["KG"] == pytest.approx(361 * math.pi / 2048, rel=1e-14)
    code, out, _ = run(capsys, "intensity", "--alpha-d", "inf", "--alpha-f", "inf")
    k0, kg = (float(v) for v in out.splitlines()[1].split(","))
    assert k0 == pytest.approx(79 * math.pi / 2048, rel=1e-8)
    assert kg == pytest.approx(65 * math.pi / 2048, rel=1e-8)


def test_solve_commands(capsys):
    assert run(capsys, "solve", "balance")[1].strip() == "0.898847102"
    assert run(capsys, "solve", "balance", "--alpha-d", "inf")[1].strip() == "1.59199428"
    assert run(capsys, "solve", "unit-visibility", "--t", "0.1")[1].strip() == "2.82403222"
    code, _, err = run(capsys, "solve", "balance", "--chi-d", "pi", "--eps", "0")
    assert code == 2 and "nothing" in err
    assert run(capsys, "solve", "unit-visibility", "--t", "2")[0] == 2


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "10")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_verify_forced_failure(capsys):
    code, out, _ = run(capsys, "verify", "--tol", "1e-12", "--samples", "5",
                       "--phase-samples", "4", "--y-nodes", "3", "--k-nodes", "3")
    assert code == 1
    failing = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert failing and "worst=" in failing[0] and " at " in out


def test_verify_bad_config(capsys):
    assert run(capsys, "verify", "--phase-samples", "5")[0] == 2
    assert run(capsys, "verify", "--tol", "0")[0] == 2


@pytest.mark.parametrize("text, value", [("1.5", 1.5), ("pi", math.pi), ("2pi/3", 2 * math.pi / 3),
                                         ("-pi", -math.pi), ("inf", math.inf)])
def test_real_parser(text, value):
    assert _real(text) == pytest.approx(value)

from __future__ import annotations

import pytest

from dce.cli import main


def test_spectrum_command(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code = main(["spectrum", "--a", "0.01", "--nmax", "6", "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert out.exists()
    assert f"wrote {out}" in captured.out
    assert captured.out.strip().endswith("PASS")


def test_run_command(tmp_path, capsys):
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text(
        "kind = spectrum\n"
        "epsilon = 0.01\n"
        "n_max = 5\n"
        f"out_dir = {tmp_path}\n",
        encoding="utf-8",
    )
    code = main(["run", str(cfg)])
    captured = capsys.readouterr()
    assert code == 0
    assert (tmp_path / "spectrum.csv").exists()
    assert "PASS" in captured.out


def test_ratio_sweep_command(tmp_path, capsys):
    code = main(
        ["ratio-sweep", "--a-grid", "1e-3,1e-2", "--out-dir", str(tmp_path)]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert (tmp_path / "ratio_sweep.csv").exists()
    assert "PASS" in captured.out


def test_check_fast_command(capsys):
    code = main(["check", "--fast"])
    captured = capsys.readouterr()
    assert code == 0
    lines = [l for l in captured.out.splitlines() if l]
    assert len(lines) == 7
    assert all(l.startswith("PASS") for l in lines)


def test_missing_config_exits_cleanly(tmp_path, capsys):
    code = main(["run", str(tmp_path / "nope.cfg")])
    captured = capsys.readouterr()
    assert code == 2
    assert "dce: error:" in captured.err


def test_invalid_config_exits_cleanly(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("kind = spectrum\na = 0.5\n", encoding="utf-8")  # too fast
    code = main(["run", str(cfg)])
    captured = capsys.readouterr()
    assert code == 2
    assert "dce: error:" in captured.err


def test_overspeed_amplitude_exits_cleanly(tmp_path, capsys):
    code = main(["spectrum", "--a", "0.5", "--out", str(tmp_path / "x.csv")])
    captured = capsys.readouterr()
    assert code == 2
    assert "dce: error:" in captured.err


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        main(["frobnicate"])

from __future__ import annotations

import math
import os

import pytest

from dce import (
    PRESET_LAWS,
    MirrorLaw,
    ScenarioConfig,
    load_config,
    parse_config,
    run_ratio_sweep,
    run_scenario,
    run_spectrum,
    run_total_vs_T,
)

SPECTRUM_CFG = """
# discrete spectrum of the weakly driven resonant cavity
kind = spectrum
L0 = 1.0
l0 = 1.0
epsilon = 0.01
n_max = 6
"""


def test_parse_config_happy_path():
    cfg = parse_config(SPECTRUM_CFG)
    assert cfg.kind == "spectrum"
    assert cfg.a == pytest.approx(0.01)
    assert cfg.n_max == 6
    assert cfg.out_dir == "."
    (law,) = cfg.laws()
    assert law == MirrorLaw(L0=1.0, a=0.01, l0=1.0, T=2.0)


def test_parse_config_rejects_garbage():
    with pytest.raises(ValueError):
        parse_config("kind = spectrum\nwibble = 3\na = 0.1")
    with pytest.raises(ValueError):
        parse_config("kind = spectrum\na = 0.1\na = 0.2")
    with pytest.raises(ValueError):
        parse_config("a = 0.1")
    with pytest.raises(ValueError):
        parse_config("kind = spectrum\na = 0.1\nepsilon = 0.1")
    with pytest.raises(ValueError):
        parse_config("kind = spectrum\njust a line without equals")


def test_config_validation():
    with pytest.raises(ValueError):
        ScenarioConfig(kind="nope")
    with pytest.raises(ValueError):
        ScenarioConfig(kind="total_vs_T", a=0.01)  # no T_grid
    with pytest.raises(ValueError):
        ScenarioConfig(kind="spectrum", a=0.01, T=3.0)  # T must equal 2*L0
    with pytest.raises(ValueError):
        ScenarioConfig(kind="band_limit", a=0.01, T=2.0)
    with pytest.raises(ValueError):
        ScenarioConfig(kind="ratio_sweep", a_grid=(0.01,), l0=2.0)
    with pytest.raises(ValueError):
        ScenarioConfig(kind="ratio_sweep", a_grid=())
    with pytest.raises(ValueError):
        ScenarioConfig(kind="spectrum", a=0.01, workers=0)
    # a law violating the speed bound is caught at config time
    with pytest.raises(ValueError):
        ScenarioConfig(kind="spectrum", a=0.2)


def test_config_laws_enumeration():
    cfg = ScenarioConfig(kind="band_limit", a=0.01)
    laws = cfg.laws()
    assert [law.L0 for law in laws] == [1.0, 4.0]
    assert all(law.T == 2.0 * law.L0 for law in laws)
    assert all(law.l0 == 1.0 for law in laws)

    sweep = ScenarioConfig(kind="ratio_sweep", a_grid=(1e-3, 1e-2))
    assert [law.a for law in sweep.laws()] == [1e-3, 1e-2]


def test_run_total_vs_T(tmp_path):
    cfg = ScenarioConfig(
        kind="total_vs_T",
        a=0.01,
        T_grid=(0.0, 2.0),
        n_max=12,
        out_dir=str(tmp_path),
    )
    report = run_total_vs_T(cfg)
    assert report.passed
    assert len(report.points) == 2
    assert report.points[0].values["N_exact"] == pytest.approx(0.0, abs=1e-15)
    assert report.points[1].values["N_approx"] == pytest.approx(9.8679829e-4, rel=1e-6)
    path = os.path.join(str(tmp_path), "total_vs_T.csv")
    assert report.csv_paths == (path,)
    with open(path) as fh:
        lines = fh.read().splitlines()
    assert lines[0] == "T,N_exact,N_approx,abs_diff"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[3]) == pytest.approx(
        abs(float(first[1]) - float(first[2])), rel=0
    )


def test_run_spectrum_writes_csv(tmp_path):
    cfg = parse_config(SPECTRUM_CFG + f"out_dir = {tmp_path}\nlabel = weak\n")
    report = run_spectrum(cfg)
    assert report.passed
    path = os.path.join(str(tmp_path), "weak_spectrum.csv")
    assert report.csv_paths == (path,)
    with open(path) as fh:
        lines = fh.read().splitlines()
    assert len(lines) == 8  # header + 6 modes + footer
    assert lines[-1].startswith("#")


def test_run_band_limit_pair(tmp_path):
    cfg = ScenarioConfig(kind="band_limit", a=0.01, n_max=10, out_dir=str(tmp_path))
    report = run_spectrum(cfg)
    assert report.passed
    assert len(report.points) == 2
    names = [os.path.basename(p) for p in report.csv_paths]
    assert names == ["spectrum_L0_1.csv", "spectrum_L0_4.csv"]
    for path in report.csv_paths:
        assert os.path.exists(path)


def test_run_ratio_sweep(tmp_path):
    cfg = ScenarioConfig(
        kind="ratio_sweep", a_grid=(1e-3, 1e-2), out_dir=str(tmp_path)
    )
    report = run_ratio_sweep(cfg)
    assert report.passed
    assert report.flags == ()  # monotone increase expected on this grid
    ratios = [p.values["ratio"] for p in report.points]
    assert ratios[0] < ratios[1]
    assert report.points[0].values["v"] == pytest.approx(2.0 * math.pi * 1e-3)
    with open(report.csv_paths[0]) as fh:
        header = fh.readline().strip()
    assert header == "v,N1,N3,ratio"


def test_ratio_sweep_flags_undefined_points(tmp_path):
    cfg = ScenarioConfig(kind="ratio_sweep", a_grid=(0.0, 1e-2), out_dir=str(tmp_path))
    report = run_ratio_sweep(cfg)
    assert "undefined_ratio" in report.points[0].flags
    assert math.isnan(report.points[0].values["ratio"])
    assert report.passed  # defect gate is separate from ratio definedness
    with open(report.csv_paths[0]) as fh:
        first_row = fh.read().splitlines()[1]
    assert "nan" in first_row


def test_run_scenario_dispatch_and_kind_guards(tmp_path):
    cfg = ScenarioConfig(
        kind="ratio_sweep", a_grid=(1e-3,), out_dir=str(tmp_path)
    )
    report = run_scenario(cfg)
    assert report.kind == "ratio_sweep"
    with pytest.raises(ValueError):
        run_total_vs_T(cfg)
    with pytest.raises(ValueError):
        run_spectrum(cfg)
    spec_cfg = ScenarioConfig(kind="spectrum", a=0.01, out_dir=str(tmp_path))
    with pytest.raises(ValueError):
        run_ratio_sweep(spec_cfg)


def test_identical_configs_are_bit_identical(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        cfg = ScenarioConfig(
            kind="spectrum", a=0.01, n_max=5, out_dir=str(out), label="rep"
        )
        run_spectrum(cfg)
    with open(out_a / "rep_spectrum.csv", "rb") as fh:
        bytes_a = fh.read()
    with open(out_b / "rep_spectrum.csv", "rb") as fh:
        bytes_b = fh.read()
    assert bytes_a == bytes_b


def test_worker_pool_output_matches_serial(tmp_path):
    base = dict(kind="total_vs_T", a=0.01, T_grid=(0.0, 2.0), n_max=8)
    serial = ScenarioConfig(**base, out_dir=str(tmp_path / "serial"))
    pooled = ScenarioConfig(**base, out_dir=str(tmp_path / "pooled"), workers=2)
    run_total_vs_T(serial)
    run_total_vs_T(pooled)
    with open(tmp_path / "serial" / "total_vs_T.csv", "rb") as fh:
        serial_bytes = fh.read()
    with open(tmp_path / "pooled" / "total_vs_T.csv", "rb") as fh:
        pooled_bytes = fh.read()
    assert serial_bytes == pooled_bytes


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "scenario.cfg"
    path.write_text(SPECTRUM_CFG, encoding="utf-8")
    cfg = load_config(path)
    assert cfg == parse_config(SPECTRUM_CFG)


def test_preset_laws_are_valid():
    assert set(PRESET_LAWS) == {"fig_small", "fig_big", "band_small", "band_big"}
    for law in PRESET_LAWS.values():
        assert law.T == 2.0 * law.L0
        assert law.l0 == 1.0

import csv
import math
from dataclasses import replace

import numpy as np
import pytest

from defect_diode import REFERENCE_DEVICE, ReservoirParams
from defect_diode.spectrum import dress, transition_table
from defect_diode.sweep import (
    CSV_COLUMNS,
    PRESETS,
    ConfigError,
    Scenario,
    SweepError,
    THREADS_ENV,
    default_threads,
    emit_csv,
    load_config,
    parse_config,
    preset_scenarios,
    reproduce,
    run_scenario,
    write_scenario,
)

MHZ = 2 * math.pi * 1e-3

# figure -> (gamma_L/2pi MHz, gamma_R/gamma_L, T_cold K, T_hot K per curve, axis, mode)
FIGURE_PARAMS = {
    "fig2": (3.0, 1.0, 0.1, [10.0], "vp", "forward-only"),
    "fig3": (3.0, 1.0, 0.1, [0.5, 1.0, 5.0, 10.0], "vp", "forward+reverse+R"),
    "fig4": (1.0, None, 0.1, [3.0, 3.0, 3.0], "vp", "forward+reverse+R"),
    "fig5": (1.0, 5.0, 0.1, [5.0], "vp", "populations"),
    "fig6": (3.0, 1.0, 0.1, [10.0] * 4, "t_hot", "forward+reverse+R"),
    "fig7": (3.0, 1.0, 0.1, [5.0], "vp", "fluxes"),
    "fig8": (3.0, 1.0, 0.005, [0.01], "vp", "lowtemp-compare"),
    "fig9a": (3.0, 1.0, 0.1, [0.5], "vp", "forward+reverse+R"),
    "fig9b": (3.0, 1.0, 0.1, [0.5], "vp", "forward+reverse+R"),
    "fig9c": (3.0, 10.0, 0.1, [0.5], "vp", "forward+reverse+R"),
    "fig9d": (3.0, 10.0, 0.1, [0.5], "vp", "forward+reverse+R"),
}

REFERENCE_CFG = """\
delta_l_ghz = 7.5
delta_r_ghz = 1.3
c_l_ghz_per_v = 0.005
c_r_ghz_per_v = 0.3
eps0_l_ghz = -3.3
eps0_r_ghz = 3.9
g_ghz = 0.85
gamma_l_over_2pi_mhz = 3
gamma_ratio = 1
t_cold_k = 0.1
t_hot_k = 10
axis = vp
axis_min = -60
axis_max = 40
axis_steps = 5
"""


def small(s: Scenario, steps=5) -> Scenario:
    return replace(s, axis_steps=steps)


@pytest.mark.parametrize("name", sorted(FIGURE_PARAMS))
def test_presets_match_figure_parameters(name):
    mhz, ratio, t_cold, t_hots, axis, mode = FIGURE_PARAMS[name]
    scenarios = preset_scenarios(name)
    assert len(scenarios) == len(t_hots)
    for (label, s), t_hot in zip(scenarios, t_hots):
        left, right = s.reservoirs
        assert left.gamma == pytest.approx(mhz * MHZ)
        if ratio is not None:
            assert right.gamma == pytest.approx(ratio * left.gamma)
        assert (left.temperature, right.temperature) == pytest.approx((t_cold, t_hot))
        assert (s.axis, s.mode) == (axis, mode)
        if name in ("fig9a", "fig9c"):
            assert s.device.left == s.device.right
        else:
            assert s.device == REFERENCE_DEVICE


def test_fig4_and_fig6_variants():
    ratios = [s.reservoirs[1].gamma / s.reservoirs[0].gamma for _, s in preset_scenarios("fig4")]
    assert ratios == pytest.approx([1.0, 5.0, 10.0])
    vps = [s.vp for _, s in preset_scenarios("fig6")]
    assert vps == [-40.3, -13.0, 0.0, 13.9]
    assert preset_scenarios("fig6")[0][1].grid()[[0, -1]] == pytest.approx([0.1, 10.0])


def test_unknown_preset():
    with pytest.raises(ValueError, match="unknown preset"):
        preset_scenarios("fig1")


def test_parse_full_config():
    s = parse_config(REFERENCE_CFG)
    assert s.device == REFERENCE_DEVICE
    assert s.axis_steps == 5 and s.mode == "forward+reverse+R"


def test_preset_only_config():
    s = parse_config("preset = fig3  # figure parameters\n")
    assert s.device == REFERENCE_DEVICE
    assert s.reservoirs[0].temperature == 0.1
    assert s.reservoirs[0].gamma == pytest.approx(3 * MHZ)
    assert s.axis_steps == 1001


def test_override_on_preset():
    s = parse_config("preset = fig4\ngamma_ratio = 10\n")
    left, right = s.reservoirs
    assert right.gamma == pytest.approx(10 * left.gamma)
    assert left.gamma == pytest.approx(1 * MHZ)


@pytest.mark.parametrize("text, needle", [
    (REFERENCE_CFG + "colour = red\n", "line 16: unknown key 'colour'"),
    (REFERENCE_CFG.replace("g_ghz = 0.85", "g_ghz = strong"), "line 7"),
    (REFERENCE_CFG.replace("g_ghz = 0.85\n", ""), "missing required key 'g_ghz'"),
    (REFERENCE_CFG + "g_ghz = 1\n", "duplicate key 'g_ghz'"),
    (REFERENCE_CFG + "just words\n", "line 16"),
    (REFERENCE_CFG.replace("axis = vp", "axis = time"), "axis must be one of"),
    (REFERENCE_CFG + "mode = loud\n", "mode must be one of"),
    ("preset = fig99\n", "unknown preset"),
    (REFERENCE_CFG.replace("axis_min = -60", "axis_min = 50"), "axis_min must be < axis_max"),
    (REFERENCE_CFG.replace("delta_l_ghz = 7.5", "delta_l_ghz = 0"), "delta must be positive"),
])
def test_config_errors(text, needle):
    with pytest.raises(ConfigError, match=needle.replace("(", r"\(")):
        parse_config(text)


def test_load_config_reports_path(tmp_path):
    missing = tmp_path / "nope.cfg"
    with pytest.raises(ConfigError, match="nope.cfg"):
        load_config(missing)
    bad = tmp_path / "bad.cfg"
    bad.write_text("wat = 1\n")
    with pytest.raises(ConfigError, match=r"bad\.cfg: line 1"):
        load_config(bad)


def test_scenario_validation():
    s = parse_config(REFERENCE_CFG)
    for kw in (dict(axis="x"), dict(mode="x"), dict(axis_steps=1)):
        with pytest.raises(ValueError):
            replace(s, **kw)


def test_one_row_csv_is_two_lines(tmp_path):
    s = parse_config(REFERENCE_CFG)
    rows = run_scenario(small(s, 2))[:1]
    path = emit_csv(rows, tmp_path / "one.csv")
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == ",".join(CSV_COLUMNS)


def test_csv_values_round_trip(tmp_path):
    rows = run_scenario(small(parse_config(REFERENCE_CFG)))
    path = emit_csv(rows, tmp_path / "t.csv")
    with path.open() as fh:
        table = list(csv.DictReader(fh))
    assert float(table[2]["q_forward"]) == rows[2].q_forward
    assert float(table[2]["rho33_r"]) == rows[2].rho_r[2]


def test_forward_only_leaves_reverse_columns_empty(tmp_path):
    s = small(preset_scenarios("fig2")[0][1], 2)
    path = emit_csv(run_scenario(s), tmp_path / "f.csv")
    row = path.read_text().splitlines()[1]
    # reverse populations, q_reverse, r_factor and residual_r are all empty
    assert row.endswith(",")
    assert ",,,,," in row


def test_equal_temperature_point_has_empty_r(tmp_path):
    s = small(preset_scenarios("fig6")[0][1], 3)
    rows = run_scenario(s)
    assert rows[0].r is None and rows[1].r is not None
    line = emit_csv(rows, tmp_path / "e.csv").read_text().splitlines()[1]
    fields = line.split(",")
    assert fields[CSV_COLUMNS.index("r_factor")] == ""


def test_units_comment_is_opt_in(tmp_path):
    rows = run_scenario(small(parse_config(REFERENCE_CFG), 2))
    text = emit_csv(rows, tmp_path / "u.csv", units_comment=True).read_text()
    assert text.startswith("# heat currents in GHz^2")


def test_emit_csv_errors(tmp_path):
    with pytest.raises(ValueError):
        emit_csv([], tmp_path / "x.csv")
    rows = run_scenario(small(parse_config(REFERENCE_CFG), 2))
    with pytest.raises(OSError, match="missing_dir"):
        emit_csv(rows, tmp_path / "missing_dir" / "x.csv")


def test_deterministic_across_thread_counts(tmp_path):
    s = small(parse_config(REFERENCE_CFG), 41)
    a = emit_csv(run_scenario(s, threads=1), tmp_path / "a.csv").read_bytes()
    b = emit_csv(run_scenario(s, threads=4), tmp_path / "b.csv").read_bytes()
    assert a == b


def test_default_threads(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert default_threads() == 1
    monkeypatch.setenv(THREADS_ENV, "3")
    assert default_threads() == 3
    monkeypatch.setenv(THREADS_ENV, "many")
    assert default_threads() == 1


def test_point_failure_names_axis_value():
    s = small(parse_config(REFERENCE_CFG), 2)
    dead = (ReservoirParams(0.1, 0.0), ReservoirParams(10.0, 0.0))
    with pytest.raises(SweepError, match="axis=-60.0"):
        run_scenario(replace(s, reservoirs=dead))


def test_companion_tables(tmp_path):
    fl = small(preset_scenarios("fig7")[0][1], 3)
    paths = write_scenario(fl, tmp_path / "fig7")
    assert [p.name for p in paths] == ["fig7.csv", "fig7_fluxes.csv"]
    header = paths[1].read_text().splitlines()[0].split(",")
    assert len(header) == 25
    lt = small(preset_scenarios("fig8")[0][1], 3)
    paths = write_scenario(lt, tmp_path / "fig8")
    assert paths[1].name == "fig8_lowtemp.csv"
    assert len(paths[1].read_text().splitlines()) == 4


def test_flux_rows_sum_to_current():
    # the right-bath channel sum reproduces Q_R
    rows = run_scenario(small(preset_scenarios("fig7")[0][1], 4))
    for r in rows:
        assert r.fluxes_f.shape == (2, 6)
        omega = np.abs(transition_table(dress(REFERENCE_DEVICE, r.axis)).energy)
        assert np.sum(omega * r.fluxes_f[1]) == pytest.approx(r.q_forward, rel=1e-10)


@pytest.mark.slow
def test_fig3_file_has_full_grid(tmp_path):
    paths = reproduce("fig3", tmp_path)
    assert [p.name for p in paths] == ["fig3_t0.5K.csv", "fig3_t1K.csv", "fig3_t5K.csv", "fig3_t10K.csv"]
    lines = paths[0].read_text().splitlines()
    assert lines[0].startswith("#")
    assert len(lines) == 1 + 1 + 1001


def test_every_preset_listed():
    assert sorted(PRESETS) == sorted(FIGURE_PARAMS)

"""Scenario configuration, grid sweeps, figure presets and CSV output."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from defect_diode.lowtemp import approximate_current
from defect_diode.rates import ReservoirParams
from defect_diode.spectrum import DefectParams, DeviceParams
from defect_diode.steadystate import heat_report, rectification_factor, swapped

GHZ2_TO_WATT = 6.62607e-16
THREADS_ENV = "DEFECT_DIODE_THREADS"

AXES = ("vp", "t_hot")
MODES = ("forward-only", "forward+reverse+R", "lowtemp-compare", "populations", "fluxes")

CSV_COLUMNS = (
    "axis", "omega_l_ghz", "omega_r_ghz",
    "rho11_f", "rho22_f", "rho33_f", "rho44_f",
    "rho11_r", "rho22_r", "rho33_r", "rho44_r",
    "q_forward", "q_reverse", "r_factor", "residual_f", "residual_r",
)


class ConfigError(ValueError):
    pass


class SweepError(RuntimeError):
    pass


@dataclass(frozen=True)
class Scenario:
    """One sweep. ``reservoirs`` is the forward pair (cold left, hot right).

    On the ``t_hot`` axis the right temperature is replaced by the axis value
    and the voltage is fixed at ``vp``.
    """

    device: DeviceParams
    reservoirs: tuple[ReservoirParams, ReservoirParams]
    axis: str = "vp"
    axis_min: float = -60.0
    axis_max: float = 40.0
    axis_steps: int = 1001
    mode: str = "forward+reverse+R"
    preset: Optional[str] = None
    vp: float = 0.0

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.axis_steps < 2:
            raise ValueError("axis_steps must be >= 2")
        if not self.axis_min < self.axis_max:
            raise ValueError("axis_min must be < axis_max")

    def grid(self) -> np.ndarray:
        return np.linspace(self.axis_min, self.axis_max, self.axis_steps)


@dataclass(frozen=True)
class SweepRow:
    axis: float
    omega_l: float
    omega_r: float
    rho_f: np.ndarray
    q_forward: float
    q_left_forward: float
    residual_f: float
    rho_r: Optional[np.ndarray] = None
    q_reverse: Optional[float] = None
    q_left_reverse: Optional[float] = None
    residual_r: Optional[float] = None
    r: Optional[float] = None
    fluxes_f: Optional[np.ndarray] = None
    fluxes_r: Optional[np.ndarray] = None
    q_approx_f: Optional[float] = None
    q_approx_r: Optional[float] = None
    in_regime: Optional[bool] = None
    t_left: float = float("nan")
    t_right: float = float("nan")


# ---------------------------------------------------------------- presets

_REFERENCE_KEYS = dict(
    delta_l_ghz=7.5, delta_r_ghz=1.3,
    c_l_ghz_per_v=0.005, c_r_ghz_per_v=0.3,
    eps0_l_ghz=-3.3, eps0_r_ghz=3.9,
    g_ghz=0.85,
)
# left defect identical to the right one
_SYMMETRIC_KEYS = dict(_REFERENCE_KEYS, delta_l_ghz=1.3, c_l_ghz_per_v=0.3, eps0_l_ghz=3.9)
_DEFAULTS = dict(
    gamma_l_over_2pi_mhz=3.0, gamma_ratio=1.0, t_cold_k=0.1, t_hot_k=10.0,
    axis="vp", axis_min=-60.0, axis_max=40.0, axis_steps=1001,
    mode="forward+reverse+R", vp_fixed_v=0.0,
)


@dataclass(frozen=True)
class Preset:
    """Base parameter set of a figure plus the curves drawn in it.

    ``variants`` maps a file label to key overrides; the base alone is what a
    config file with ``preset = <name>`` starts from.
    """

    name: str
    keys: dict
    variants: tuple = ()
    note: str = ""


PRESETS: dict[str, Preset] = {
    "fig2": Preset("fig2", dict(_REFERENCE_KEYS, **dict(_DEFAULTS, mode="forward-only")),
                   note="dressed frequencies versus voltage"),
    "fig3": Preset(
        "fig3", dict(_REFERENCE_KEYS, **_DEFAULTS),
        variants=tuple((f"t{t:g}K", dict(t_hot_k=t)) for t in (0.5, 1.0, 5.0, 10.0)),
    ),
    "fig4": Preset(
        "fig4", dict(_REFERENCE_KEYS, **dict(_DEFAULTS, gamma_l_over_2pi_mhz=1.0, t_hot_k=3.0)),
        variants=tuple((f"ratio{k:g}", dict(gamma_ratio=k)) for k in (1.0, 5.0, 10.0)),
        # reverse run exchanges temperatures, as in every other preset
        note="reverse run exchanges temperatures",
    ),
    "fig5": Preset("fig5", dict(_REFERENCE_KEYS, **dict(
        _DEFAULTS, gamma_l_over_2pi_mhz=1.0, gamma_ratio=5.0, t_hot_k=5.0, mode="populations"))),
    "fig6": Preset(
        "fig6", dict(_REFERENCE_KEYS, **dict(_DEFAULTS, axis="t_hot", axis_min=0.1, axis_max=10.0)),
        variants=tuple((f"vp{v:g}V", dict(vp_fixed_v=v)) for v in (-40.3, -13.0, 0.0, 13.9)),
    ),
    "fig7": Preset("fig7", dict(_REFERENCE_KEYS, **dict(_DEFAULTS, t_hot_k=5.0, mode="fluxes"))),
    "fig8": Preset("fig8", dict(_REFERENCE_KEYS, **dict(
        _DEFAULTS, t_cold_k=0.005, t_hot_k=0.01, mode="lowtemp-compare"))),
    "fig9a": Preset("fig9a", dict(_SYMMETRIC_KEYS, **dict(_DEFAULTS, t_hot_k=0.5)),
                    note="full symmetry"),
    "fig9b": Preset("fig9b", dict(_REFERENCE_KEYS, **dict(_DEFAULTS, t_hot_k=0.5)),
                    note="different energy structures"),
    "fig9c": Preset("fig9c", dict(_SYMMETRIC_KEYS, **dict(_DEFAULTS, t_hot_k=0.5, gamma_ratio=10.0)),
                    note="different reservoir couplings"),
    "fig9d": Preset("fig9d", dict(_REFERENCE_KEYS, **dict(_DEFAULTS, t_hot_k=0.5, gamma_ratio=10.0)),
                    note="different energy structures and couplings"),
}


def scenario_from_keys(keys: dict) -> Scenario:
    """Build a Scenario from a complete flat key mapping (config-file vocabulary)."""
    device = DeviceParams(
        left=DefectParams(keys["delta_l_ghz"], keys["c_l_ghz_per_v"], keys["eps0_l_ghz"]),
        right=DefectParams(keys["delta_r_ghz"], keys["c_r_ghz_per_v"], keys["eps0_r_ghz"]),
        g=keys["g_ghz"],
    )
    left = ReservoirParams.from_mhz(keys["t_cold_k"], keys["gamma_l_over_2pi_mhz"])
    right = ReservoirParams(keys["t_hot_k"], left.gamma * keys["gamma_ratio"])
    return Scenario(
        device=device, reservoirs=(left, right), axis=keys["axis"],
        axis_min=float(keys["axis_min"]), axis_max=float(keys["axis_max"]),
        axis_steps=int(keys["axis_steps"]), mode=keys["mode"],
        preset=keys.get("preset"), vp=float(keys.get("vp_fixed_v", 0.0)),
    )


def preset_scenarios(name: str) -> list[tuple[str, Scenario]]:
    """(label, scenario) for every curve of a figure preset."""
    try:
        p = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    variants = p.variants or (("", {}),)
    return [(label, scenario_from_keys(dict(p.keys, preset=name, **over)))
            for label, over in variants]


# ---------------------------------------------------------------- config files

_FLOAT_KEYS = {
    "delta_l_ghz", "delta_r_ghz", "c_l_ghz_per_v", "c_r_ghz_per_v", "eps0_l_ghz",
    "eps0_r_ghz", "g_ghz", "gamma_l_over_2pi_mhz", "gamma_ratio", "t_cold_k", "t_hot_k",
    "axis_min", "axis_max", "vp_fixed_v",
}
_KNOWN_KEYS = _FLOAT_KEYS | {"axis", "axis_steps", "mode", "preset"}
_OPTIONAL_KEYS = {"mode", "preset", "vp_fixed_v"}


def _parse_value(key: str, raw: str, lineno: int):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key == "axis_steps":
            return int(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: cannot parse value {raw!r} for key {key!r}") from None
    if key == "axis" and raw not in AXES:
        raise ConfigError(f"line {lineno}: axis must be one of {AXES}, got {raw!r}")
    if key == "mode" and raw not in MODES:
        raise ConfigError(f"line {lineno}: mode must be one of {MODES}, got {raw!r}")
    if key == "preset" and raw not in PRESETS:
        raise ConfigError(f"line {lineno}: unknown preset {raw!r}")
    return raw


def parse_config(text: str) -> Scenario:
    keys: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in keys:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        keys[key] = _parse_value(key, raw, lineno)

    merged = dict(PRESETS[keys["preset"]].keys) if "preset" in keys else dict(mode=_DEFAULTS["mode"])
    merged.update(keys)
    missing = sorted(_KNOWN_KEYS - _OPTIONAL_KEYS - merged.keys())
    if missing:
        raise ConfigError(f"missing required key {missing[0]!r}")
    try:
        return scenario_from_keys(merged)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    try:
        return parse_config(text)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# ---------------------------------------------------------------- sweep engine

def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


def _check(report, reservoirs, x):
    t_l, t_r = (r.temperature for r in reservoirs)
    q_l, q_r = report.q
    big = max(abs(q_l), abs(q_r))
    if t_l != t_r and report.residual > 1e-9 * big + report.noise:
        raise SweepError(f"axis={x!r}: heat currents do not balance ({q_l!r}, {q_r!r})")
    if (t_r - t_l) * q_r < -abs(t_r - t_l) * (1e-9 * big + report.noise):
        raise SweepError(f"axis={x!r}: heat flows from cold to hot")


def _point(s: Scenario, x: float) -> SweepRow:
    vp = x if s.axis == "vp" else s.vp
    left, right = s.reservoirs
    if s.axis == "t_hot":
        right = replace(right, temperature=x)
    fwd = (left, right)
    rep_f = heat_report(s.device, fwd, vp)
    _check(rep_f, fwd, x)
    row = dict(
        axis=x, omega_l=float(rep_f.spectrum.omega[0]), omega_r=float(rep_f.spectrum.omega[1]),
        rho_f=rep_f.populations.rho, q_forward=float(rep_f.q[1]),
        q_left_forward=float(rep_f.q[0]), residual_f=rep_f.residual,
        t_left=left.temperature, t_right=right.temperature,
    )
    if s.mode == "forward-only":
        return SweepRow(**row)

    rev = swapped(fwd)
    rep_r = heat_report(s.device, rev, vp)
    _check(rep_r, rev, x)
    row.update(
        rho_r=rep_r.populations.rho, q_reverse=float(rep_r.q[1]),
        q_left_reverse=float(rep_r.q[0]), residual_r=rep_r.residual,
        r=rectification_factor(row["q_forward"], float(rep_r.q[1]),
                               floor=max(rep_f.noise, rep_r.noise))
        if left.temperature != right.temperature else None,
    )
    if s.mode == "fluxes":
        row.update(fluxes_f=rep_f.fluxes, fluxes_r=rep_r.fluxes)
    if s.mode == "lowtemp-compare":
        qa_f, ok_f = approximate_current(s.device, fwd, vp)
        qa_r, ok_r = approximate_current(s.device, rev, vp)
        row.update(q_approx_f=qa_f, q_approx_r=qa_r, in_regime=ok_f and ok_r)
    return SweepRow(**row)


def run_scenario(s: Scenario, threads: Optional[int] = None) -> list[SweepRow]:
    """Evaluate every grid point; rows come back in axis order.

    Points are independent, so the result does not depend on ``threads``.
    """
    grid = [float(x) for x in s.grid()]

    def task(x):
        try:
            return _point(s, x)
        except SweepError:
            raise
        except Exception as exc:
            raise SweepError(f"axis={x!r}: {type(exc).__name__}: {exc}") from exc

    threads = threads or default_threads()
    if threads == 1:
        return [task(x) for x in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, grid))


# ---------------------------------------------------------------- CSV output

def _fmt(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


def _row_fields(row: SweepRow) -> list[str]:
    rho_r = row.rho_r if row.rho_r is not None else [None] * 4
    vals = [row.axis, row.omega_l, row.omega_r, *row.rho_f, *rho_r,
            row.q_forward, row.q_reverse, row.r, row.residual_f, row.residual_r]
    return [_fmt(v) for v in vals]


def _write(destination, lines: Sequence[str]) -> Path:
    path = Path(destination)
    try:
        with path.open("w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    return path


def emit_csv(rows: Sequence[SweepRow], destination, units_comment: bool = False) -> Path:
    """Write the sweep table. Undefined R and absent reverse data are empty fields.

    With ``units_comment`` a leading ``#`` line records the current unit.
    """
    if not rows:
        raise ValueError("no rows to write")
    lines = []
    if units_comment:
        lines.append(f"# heat currents in GHz^2 (1 GHz^2 = {GHZ2_TO_WATT:g} W), energies in GHz")
    lines.append(",".join(CSV_COLUMNS))
    lines.extend(",".join(_row_fields(r)) for r in rows)
    return _write(destination, lines)


def emit_flux_csv(rows: Sequence[SweepRow], destination) -> Path:
    """Per-channel net upward fluxes Phi[mu, l] for forward and reverse runs."""
    if not rows or rows[0].fluxes_f is None:
        raise ValueError("rows carry no flux data")
    cols = ["axis"] + [f"phi_{mu}{l}_{d}" for d in ("f", "r") for mu in "lr" for l in range(1, 7)]
    lines = [",".join(cols)]
    for r in rows:
        vals = [r.axis, *np.ravel(r.fluxes_f), *np.ravel(r.fluxes_r)]
        lines.append(",".join(_fmt(v) for v in vals))
    return _write(destination, lines)


def emit_lowtemp_csv(rows: Sequence[SweepRow], destination) -> Path:
    """Exact versus truncated low-temperature current, both directions."""
    if not rows or rows[0].q_approx_f is None:
        raise ValueError("rows carry no low-temperature comparison")
    cols = ["axis", "q_exact_f", "q_approx_f", "rel_dev_f",
            "q_exact_r", "q_approx_r", "rel_dev_r", "in_regime"]
    lines = [",".join(cols)]
    for r in rows:
        dev_f = abs(r.q_approx_f - r.q_forward) / abs(r.q_forward) if r.q_forward else None
        dev_r = abs(r.q_approx_r - r.q_reverse) / abs(r.q_reverse) if r.q_reverse else None
        vals = [_fmt(v) for v in (r.axis, r.q_forward, r.q_approx_f, dev_f,
                                  r.q_reverse, r.q_approx_r, dev_r)]
        lines.append(",".join(vals + [str(int(bool(r.in_regime)))]))
    return _write(destination, lines)


def write_scenario(s: Scenario, stem, threads: Optional[int] = None) -> list[Path]:
    """Run ``s`` and write ``<stem>.csv`` plus any mode-specific companion table."""
    stem = Path(stem)
    rows = run_scenario(s, threads=threads)
    # append rather than with_suffix: labels such as "t0.5K" contain dots
    paths = [emit_csv(rows, stem.with_name(stem.name + ".csv"), units_comment=True)]
    if s.mode == "fluxes":
        paths.append(emit_flux_csv(rows, stem.with_name(stem.name + "_fluxes.csv")))
    if s.mode == "lowtemp-compare":
        paths.append(emit_lowtemp_csv(rows, stem.with_name(stem.name + "_lowtemp.csv")))
    return paths


def reproduce(name: str, out_dir, threads: Optional[int] = None) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for label, scenario in preset_scenarios(name):
        stem = out / (f"{name}_{label}" if label else name)
        paths.extend(write_scenario(scenario, stem, threads=threads))
    return paths

"""Low-temperature truncated rate model and its comparison with the full solver.

At low temperature only a few thermally activated transitions matter. The
truncated generator keeps:

* decay (n + 1 -> 1) on channels 3-2, 4-3 and 1-4, for both reservoirs;
* activation on channels 3-2 and 4-3 for both reservoirs;
* activation on channels 1-3 and 1-4 from the right reservoir only;

with n(omega) replaced by exp(-omega/T). Everything else is dropped. Rows 1-3 of
this generator plus the trace row form the 4x4 system that is solved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from defect_diode.rates import ChannelRates, assemble_generator, channel_rates
from defect_diode.spectrum import DeviceParams, DressedSpectrum, dress, jump_table, transition_table
from defect_diode.steadystate import Populations, heat_report, stationary, swapped

_KEEP_DECAY = np.array([1, 0, 0, 0, 1, 1], dtype=bool)
_KEEP_ACTIVATION = np.array([
    [1, 0, 0, 0, 1, 0],  # left
    [1, 0, 0, 1, 1, 1],  # right
], dtype=bool)
_REGIME_CHANNELS = np.array([0, 3, 4, 5])
REGIME_BOLTZMANN_LIMIT = 0.1


@dataclass(frozen=True)
class LowTempModel:
    """Truncated per-reservoir generators (2, 4, 4) with the spectrum they act on."""

    generators: np.ndarray
    eps: np.ndarray
    boltzmann: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.generators.sum(axis=0)

    @property
    def reduced_system(self) -> np.ndarray:
        """Rows 1-3 of the truncated generator with the trace row appended."""
        m = self.total.copy()
        m[3, :] = 1.0
        return m

    @property
    def in_regime(self) -> bool:
        """True when every retained Boltzmann factor is below 0.1."""
        return bool(self.boltzmann[:, _REGIME_CHANNELS].max() < REGIME_BOLTZMANN_LIMIT)


def lowtemp_generator(rates: ChannelRates, spectrum: DressedSpectrum) -> LowTempModel:
    t = rates.temperatures[:, None]
    with np.errstate(divide="ignore"):
        boltzmann = np.exp(-rates.omega[None, :] / t)
    A = np.where(_KEEP_DECAY, rates.emission, 0.0)
    B = np.where(_KEEP_ACTIVATION, rates.emission * boltzmann, 0.0)
    gens = np.stack([
        assemble_generator(A[k], B[k], rates.lower, rates.upper) for k in (0, 1)
    ])
    gens.flags.writeable = False
    return LowTempModel(generators=gens, eps=np.asarray(spectrum.eps), boltzmann=boltzmann)


def lowtemp_steady_state(model: LowTempModel) -> Populations:
    """Null vector of the truncated generator, normalised.

    Raises SingularGeneratorError when a retained channel that keeps the
    levels connected has zero rate.
    """
    rho = stationary(model.total)
    rhs = np.array([0.0, 0.0, 0.0, 1.0])
    scale = np.abs(model.total).max()
    if np.abs(model.reduced_system @ rho - rhs).max() > 1e-10 * max(scale, 1.0):
        raise ArithmeticError("truncated steady state does not satisfy the 4x4 system")
    return Populations(rho)


def lowtemp_heat_current(model: LowTempModel, rho: Populations | None = None) -> float:
    """Approximate right-reservoir heat current <eps| M_m,R |rho_m>."""
    if rho is None:
        rho = lowtemp_steady_state(model)
    return float(model.eps @ (model.generators[1] @ rho.rho))


@dataclass(frozen=True)
class ComparisonRow:
    vp: float
    q_exact_f: float
    q_approx_f: float
    q_exact_r: float
    q_approx_r: float
    in_regime: bool

    @property
    def rel_dev_f(self) -> float:
        return _rel(self.q_approx_f, self.q_exact_f)

    @property
    def rel_dev_r(self) -> float:
        return _rel(self.q_approx_r, self.q_exact_r)


def _rel(approx: float, exact: float) -> float:
    return abs(approx - exact) / abs(exact) if exact != 0 else float("nan")


def approximate_current(device: DeviceParams, reservoirs, vp: float) -> tuple[float, bool]:
    """Truncated-model Q_R and whether the point is inside the low-temperature regime."""
    spec = dress(device, vp)
    rates = channel_rates(transition_table(spec), jump_table(spec), reservoirs)
    model = lowtemp_generator(rates, spec)
    return lowtemp_heat_current(model), model.in_regime


def compare_exact_approx(device: DeviceParams, reservoirs, vp_grid) -> list[ComparisonRow]:
    """Exact vs truncated Q_R on a voltage grid, forward and with temperatures exchanged."""
    rows = []
    rev = swapped(reservoirs)
    for vp in vp_grid:
        vp = float(vp)
        qa_f, ok_f = approximate_current(device, reservoirs, vp)
        qa_r, ok_r = approximate_current(device, rev, vp)
        rows.append(ComparisonRow(
            vp=vp,
            q_exact_f=float(heat_report(device, reservoirs, vp).q[1]),
            q_approx_f=qa_f,
            q_exact_r=float(heat_report(device, rev, vp).q[1]),
            q_approx_r=qa_r,
            in_regime=ok_f and ok_r,
        ))
    return rows

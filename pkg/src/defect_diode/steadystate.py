"""Steady-state populations, heat currents, channel fluxes and rectification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from defect_diode.rates import (
    ChannelRates,
    RateMatrix,
    ReservoirParams,
    channel_rates,
    rate_matrix,
)
from defect_diode.spectrum import CHANNEL_LOWER, DeviceParams, DressedSpectrum, dress, jump_table, transition_table


# currents below this fraction of the gross channel flow are round-off
NOISE_FLOOR = 1e-12


class SingularGeneratorError(ValueError):
    """The generator has no unique normalised null vector (disconnected levels)."""


def stationary(m, method: str = "gth") -> np.ndarray:
    """Normalised null vector of a population generator, batched over leading axes.

    ``m[..., i, j]`` is the rate j -> i (columns sum to zero). The default
    ``"gth"`` method is Grassmann-Taksar-Heyman state reduction: Gaussian
    elimination arranged so that it never subtracts, which keeps every
    population accurate to relative round-off even when it is 1e-30.
    ``"trace_row"`` solves the linear system with one row swapped for the
    normalisation condition (single matrices only).
    """
    m = np.asarray(m, dtype=float)
    if method == "trace_row":
        return _trace_row(m)
    if method != "gth":
        raise ValueError(f"unknown method {method!r}")

    n = m.shape[-1]
    off = ~np.eye(n, dtype=bool)
    if np.any(m[..., off] < 0):
        raise ValueError("generator has negative off-diagonal rates")
    q = np.array(np.swapaxes(m, -1, -2))  # q[..., i, j]: rate i -> j
    pivots = np.empty(q.shape[:-1])
    for k in range(n - 1, 0, -1):
        s = q[..., k, :k].sum(axis=-1)
        if np.any(s <= 0):
            raise SingularGeneratorError(
                f"level {k + 1} cannot reach any lower level; null space is not one-dimensional"
            )
        pivots[..., k] = s
        # divide first: q[k, j] / s <= 1, so huge rates cannot overflow
        q[..., :k, :k] += q[..., :k, k, None] * (q[..., k, None, :k] / s[..., None, None])
    p = np.zeros(q.shape[:-1])
    p[..., 0] = 1.0
    for k in range(1, n):
        p[..., k] = (p[..., :k] * q[..., :k, k]).sum(axis=-1) / pivots[..., k]
    return p / p.sum(axis=-1, keepdims=True)


def _trace_row(m: np.ndarray) -> np.ndarray:
    if m.ndim != 2:
        raise ValueError("trace_row solves one matrix at a time")
    diag = np.abs(np.diag(m))
    row = int(np.argmax(diag))
    a = m.copy()
    a[row, :] = 1.0
    rhs = np.zeros(m.shape[0])
    rhs[row] = 1.0
    try:
        rho = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularGeneratorError(str(exc)) from exc
    return rho


@dataclass(frozen=True)
class Populations:
    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=float)
        if rho.shape != (4,):
            raise ValueError(f"expected 4 populations, got shape {rho.shape}")
        if abs(rho.sum() - 1.0) > 1e-12:
            raise ValueError(f"populations sum to {rho.sum()!r}, not 1")
        if np.any(rho < -1e-12) or np.any(rho > 1 + 1e-12):
            raise ValueError(f"populations outside [0, 1]: {rho}")
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)


def _as_matrix(m) -> np.ndarray:
    return m.m if isinstance(m, RateMatrix) else np.asarray(m, dtype=float)


def steady_state(m_total, method: str = "gth") -> Populations:
    """Steady state of the total generator (RateMatrix or 4x4 array)."""
    m = _as_matrix(m_total)
    rho = stationary(m, method=method)
    scale = np.abs(m).max()
    if scale > 0 and np.abs(m @ rho).max() > 1e-10 * scale:
        raise SingularGeneratorError("steady-state residual too large")
    return Populations(rho)


def closed_form_arrays(A, B) -> np.ndarray:
    """Closed-form populations from reservoir-summed rates A_i, B_i (..., 6).

    The rates must be in the canonical channel orientation.
    """
    A1, A2, A3, A4, A5, A6 = np.moveaxis(np.asarray(A, dtype=float), -1, 0)
    B1, B2, B3, B4, B5, B6 = np.moveaxis(np.asarray(B, dtype=float), -1, 0)
    r1 = ((A4 + A5 + B1) * (A3 * A6 + A2 * (A6 + B3))
          + (A3 * A4 + A2 * (A4 + B1)) * B5
          + A1 * (A5 * A6 + A4 * (A6 + B3 + B5)))
    r2 = (A5 * A6 * B2 + (A4 * B2 + B1 * (B2 + B4)) * (A6 + B3 + B5)
          + A4 * B3 * B6 + B1 * (B3 + B5) * B6 + A5 * B3 * (B2 + B4 + B6))
    r3 = (A3 * A6 * B4 + (A2 * B4 + A1 * (B2 + B4)) * (A6 + B3 + B5)
          + A2 * B5 * B6 + A1 * (B3 + B5) * B6 + A3 * B5 * (B2 + B4 + B6))
    r4 = (A2 * A5 * B4 + A1 * A5 * (B2 + B4) + (A1 + A2) * (A4 + A5) * B6
          + A2 * B1 * B6 + A3 * A4 * (B2 + B6) + A3 * (A5 + B1) * (B2 + B4 + B6))
    r = np.stack([r1, r2, r3, r4], axis=-1)
    norm = r.sum(axis=-1, keepdims=True)
    if np.any(norm <= 0):
        raise SingularGeneratorError("closed form normalisation vanishes")
    return r / norm


def steady_state_closed_form(rates: ChannelRates) -> Populations:
    A, B = rates.summed()
    # a channel with swapped roles runs the canonical direction with A and B exchanged
    flipped = np.asarray(rates.lower) != CHANNEL_LOWER
    A_c = np.where(flipped, B, A)
    B_c = np.where(flipped, A, B)
    return Populations(closed_form_arrays(A_c, B_c))


def _rho(rho) -> np.ndarray:
    return rho.rho if isinstance(rho, Populations) else np.asarray(rho, dtype=float)


def heat_current(m_mu: RateMatrix, eps, rho) -> float:
    """Heat current <eps| M_mu |rho> into the system from reservoir mu.

    Cross-checked against the channel sum sum_l omega_l Phi_l.
    """
    r = _rho(rho)
    eps = np.asarray(eps, dtype=float)
    q = float(eps @ (m_mu.m @ r))
    up = m_mu.B * r[m_mu.lower]
    down = m_mu.A * r[m_mu.upper]
    omega = eps[m_mu.upper] - eps[m_mu.lower]
    q_channels = float(np.sum(omega * (up - down)))
    gross = float(np.sum(np.abs(omega) * (up + down)))
    if abs(q - q_channels) > 1e-12 * gross + 1e-300:
        raise ArithmeticError(f"heat current forms disagree: {q!r} vs {q_channels!r}")
    return q


def channel_fluxes(rates: ChannelRates, rho) -> np.ndarray:
    """Net upward flux Phi[mu, l] = B rho_lower - A rho_upper, shape (2, 6)."""
    r = _rho(rho)
    return rates.B * r[rates.lower] - rates.A * r[rates.upper]


@dataclass(frozen=True)
class HeatReport:
    """Steady state of one configuration; ``q`` = (Q_L, Q_R), positive into the system.

    ``gross`` is the energy flow summed over both directions of every channel,
    the scale against which round-off in ``q`` is judged.
    """

    q: np.ndarray
    populations: Populations
    fluxes: np.ndarray
    residual: float
    spectrum: Optional[DressedSpectrum] = None
    gross: float = 0.0

    @property
    def noise(self) -> float:
        return NOISE_FLOOR * self.gross


def heat_report(device: DeviceParams, reservoirs, vp: float, method: str = "gth") -> HeatReport:
    spec = dress(device, vp)
    rates = channel_rates(transition_table(spec), jump_table(spec), reservoirs)
    m_l, m_r = rate_matrix(rates, 0), rate_matrix(rates, 1)
    pops = steady_state(m_l.m + m_r.m, method=method)
    q = np.array([heat_current(m_l, spec.eps, pops), heat_current(m_r, spec.eps, pops)])
    rho = pops.rho
    gross = float(np.sum(rates.omega * (rates.B * rho[rates.lower] + rates.A * rho[rates.upper])))
    return HeatReport(q=q, populations=pops, fluxes=channel_fluxes(rates, pops),
                      residual=float(abs(q.sum())), spectrum=spec, gross=gross)


@dataclass(frozen=True)
class RectificationResult:
    q_forward: float
    q_reverse: float
    r: Optional[float]

    @property
    def defined(self) -> bool:
        return self.r is not None


def rectification_factor(q_forward: float, q_reverse: float, rel: float = 1e-14,
                         floor: float = 0.0) -> Optional[float]:
    """|Qf + Qr| / |Qf - Qr|.

    None when the denominator is numerically zero, or when both currents are
    at or below ``floor`` (pure round-off).
    """
    scale = max(abs(q_forward), abs(q_reverse))
    den = abs(q_forward - q_reverse)
    if scale <= floor or den < rel * scale:
        return None
    return float(abs(q_forward + q_reverse) / den)


def swapped(reservoirs) -> tuple[ReservoirParams, ReservoirParams]:
    """Exchange the two temperatures; each gamma stays with its defect."""
    left, right = reservoirs
    return (ReservoirParams(right.temperature, left.gamma),
            ReservoirParams(left.temperature, right.gamma))


def rectification(device: DeviceParams, reservoirs, vp: float) -> RectificationResult:
    """Forward run with ``reservoirs`` as given, reverse run with temperatures exchanged.

    Both currents are the right-reservoir current Q_R.
    """
    left, right = reservoirs
    if left.temperature == right.temperature:
        raise ValueError("rectification needs two distinct temperatures")
    fwd = heat_report(device, reservoirs, vp)
    rev = heat_report(device, swapped(reservoirs), vp)
    qf, qr = float(fwd.q[1]), float(rev.q[1])
    return RectificationResult(qf, qr, rectification_factor(qf, qr, floor=max(fwd.noise, rev.noise)))

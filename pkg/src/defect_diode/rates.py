"""Thermal transition rates and the per-reservoir population generator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from defect_diode.spectrum import KB_OVER_H_GHZ_PER_K, JumpTable, TransitionTable

_RESERVOIR_INDEX = {"L": 0, "R": 1, 0: 0, 1: 1}


@dataclass(frozen=True)
class ReservoirParams:
    """Bosonic bath: temperature in kelvin, flat dissipation rate gamma in GHz."""

    temperature: float
    gamma: float

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError(f"temperature must be > 0 K, got {self.temperature}")
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")

    @classmethod
    def from_mhz(cls, temperature: float, gamma_over_2pi_mhz: float) -> ReservoirParams:
        """Take the rate as quoted, gamma/2pi in MHz."""
        return cls(temperature, 2 * np.pi * gamma_over_2pi_mhz * 1e-3)

    @property
    def temperature_ghz(self) -> float:
        return self.temperature * KB_OVER_H_GHZ_PER_K


def bose_occupation(omega, temperature_ghz):
    """Bose-Einstein occupation 1/(exp(omega/T) - 1) for omega > 0.

    Written as exp(-x)/(-expm1(-x)), which neither overflows for x >> 1 nor
    loses digits for x << 1. T = 0 gives 0.
    """
    omega = np.asarray(omega, dtype=float)
    t = np.asarray(temperature_ghz, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("bose_occupation needs omega > 0; pass the channel magnitude")
    if np.any(t < 0):
        raise ValueError("temperature must be >= 0")
    with np.errstate(divide="ignore"):
        x = omega / t
    n = np.exp(-x) / -np.expm1(-x)
    return n if n.ndim else float(n)


def rate_arrays(energy, a, gamma, temperature_ghz):
    """Vectorised channel rates.

    energy: (..., 6) signed channel energies; a: (..., 2, 6) jump coefficients;
    gamma, temperature_ghz: (..., 2). Returns (A, B, swap, emission) where A, B
    are (..., 2, 6), ``swap`` marks channels with energy < 0, and ``emission``
    is the zero-temperature decay rate 2 gamma a^2.
    """
    energy = np.asarray(energy, dtype=float)
    w = np.abs(energy)[..., None, :]
    t = np.asarray(temperature_ghz, dtype=float)[..., :, None]
    emission = 2.0 * np.asarray(gamma, dtype=float)[..., :, None] * np.asarray(a) ** 2
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        x = np.where(w == 0, 1.0, w) / t
        n = np.exp(-x) / -np.expm1(-x)
    # a vanishing (or subnormal, so n overflows) gap takes the classical limit
    zero = (w == 0) | ~np.isfinite(n)
    A = np.where(zero, emission * t, emission * (n + 1.0))
    B = np.where(zero, emission * t, emission * n)
    return A, B, energy < 0, emission


@dataclass(frozen=True)
class ChannelRates:
    """Per-reservoir downward (A) and upward (B) rates, shape (2, 6).

    ``lower``/``upper`` give the effective orientation of each channel: for a
    channel with negative signed energy the roles of the two levels are
    swapped, so ``omega`` is always |energy|.
    """

    A: np.ndarray
    B: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    omega: np.ndarray
    emission: np.ndarray
    temperatures: np.ndarray

    def summed(self) -> tuple[np.ndarray, np.ndarray]:
        return self.A.sum(axis=0), self.B.sum(axis=0)


def channel_rates(table: TransitionTable, jumps: JumpTable, reservoirs) -> ChannelRates:
    """Rates for both reservoirs; ``reservoirs`` is a (left, right) pair."""
    left, right = reservoirs
    gamma = np.array([left.gamma, right.gamma])
    temps = np.array([left.temperature_ghz, right.temperature_ghz])
    A, B, swap, emission = rate_arrays(table.energy, jumps.a, gamma, temps)
    lower = np.where(swap, table.upper, table.lower)
    upper = np.where(swap, table.lower, table.upper)
    return ChannelRates(A=A, B=B, lower=lower, upper=upper,
                        omega=np.abs(np.asarray(table.energy)), emission=emission,
                        temperatures=temps)


def assemble_generator(A, B, lower, upper) -> np.ndarray:
    """Population generator from channel rates, batched over leading axes.

    A, B: (..., 6); lower, upper: (6,) or (..., 6). Channel (j, m) moves
    population m -> j at rate A and j -> m at rate B.
    """
    eye = np.eye(4)
    ej = eye[np.asarray(lower)]
    em = eye[np.asarray(upper)]
    down = ej[..., :, None] * em[..., None, :] - em[..., :, None] * em[..., None, :]
    up = em[..., :, None] * ej[..., None, :] - ej[..., :, None] * ej[..., None, :]
    A = np.asarray(A)[..., None, None]
    B = np.asarray(B)[..., None, None]
    return (A * down + B * up).sum(axis=-3)


@dataclass(frozen=True)
class RateMatrix:
    """4x4 generator M_mu of reservoir ``mu`` acting on (rho_11, ..., rho_44).

    The channel decomposition (A, B, lower, upper) is kept for flux reporting.
    """

    m: np.ndarray
    mu: int
    A: np.ndarray
    B: np.ndarray
    lower: np.ndarray
    upper: np.ndarray


def rate_matrix(rates: ChannelRates, mu) -> RateMatrix:
    """Generator of one reservoir; ``mu`` is 0/'L' or 1/'R'."""
    try:
        k = _RESERVOIR_INDEX[mu]
    except KeyError:
        raise ValueError(f"unknown reservoir {mu!r}") from None
    m = assemble_generator(rates.A[k], rates.B[k], rates.lower, rates.upper)
    m.flags.writeable = False
    return RateMatrix(m=m, mu=k, A=rates.A[k], B=rates.B[k],
                      lower=rates.lower, upper=rates.upper)


def total_generator(rates: ChannelRates) -> np.ndarray:
    return rate_matrix(rates, 0).m + rate_matrix(rates, 1).m

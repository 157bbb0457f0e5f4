"""Dressed spectrum of the two coupled defects.

Energies are ordinary frequencies in GHz throughout. Levels are indexed 0..3
for the eigenenergies eps_1..eps_4; defects are indexed 0 (left) and 1 (right).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# k_B / h in GHz per kelvin
KB_OVER_H_GHZ_PER_K = 20.836619

# (lower, upper) level of each of the six transition channels, 0-based
CHANNEL_LOWER = np.array([2, 0, 3, 0, 3, 0])
CHANNEL_UPPER = np.array([1, 1, 1, 2, 2, 3])
CHANNEL_LABELS = ("3-2", "1-2", "4-2", "1-3", "4-3", "1-4")


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class DefectParams:
    """One defect: tunneling energy and affine strain map eps(V) = slope*V + offset."""

    delta: float
    slope: float
    offset: float

    def __post_init__(self):
        if not np.isfinite(self.delta) or self.delta <= 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not (np.isfinite(self.slope) and np.isfinite(self.offset)):
            raise ValueError("slope and offset must be finite")

    @classmethod
    def from_pivot(cls, delta: float, c: float, v0: float) -> DefectParams:
        """Build from the form eps = c (V - v0)."""
        return cls(delta, c, -c * v0)


@dataclass(frozen=True)
class DeviceParams:
    left: DefectParams
    right: DefectParams
    g: float

    def __post_init__(self):
        if not np.isfinite(self.g) or self.g < 0:
            raise ValueError(f"coupling g must be >= 0, got {self.g}")

    @property
    def defects(self) -> tuple[DefectParams, DefectParams]:
        return (self.left, self.right)


# Delta_L = 7.5 GHz, Delta_R = 1.3 GHz, eps_L = 5 MHz/V * V - 3.3 GHz,
# eps_R = 0.3 GHz/V * (V + 13 V), g = 850 MHz
REFERENCE_DEVICE = DeviceParams(
    left=DefectParams(delta=7.5, slope=0.005, offset=-3.3),
    right=DefectParams.from_pivot(delta=1.3, c=0.3, v0=-13.0),
    g=0.85,
)


def asymmetry_energy(defect: DefectParams, vp):
    """Strain-induced asymmetry energy (GHz) at piezo voltage ``vp`` (V)."""
    return defect.slope * vp + defect.offset


def spectrum_arrays(eps_l, delta_l, eps_r, delta_r, g) -> dict[str, np.ndarray]:
    """Elementwise dressed-spectrum quantities; inputs broadcast against each other.

    Returned ``eps`` has a trailing axis of length 4.
    """
    eps_l, delta_l, eps_r, delta_r, g = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (eps_l, delta_l, eps_r, delta_r, g))
    )
    omega_l = np.hypot(eps_l, delta_l)
    omega_r = np.hypot(eps_r, delta_r)
    theta_l = np.arctan2(delta_l, eps_l)
    theta_r = np.arctan2(delta_r, eps_r)
    g_par = g * (eps_l / omega_l) * (eps_r / omega_r)
    g_perp = g * (delta_l / omega_l) * (delta_r / omega_r)
    # g_perp >= 0, so both angles land in [0, pi); beta = pi/2 at omega_l == omega_r
    alpha = np.arctan2(g_perp, omega_l + omega_r)
    beta = np.arctan2(g_perp, omega_l - omega_r)
    outer = 0.5 * np.hypot(omega_l + omega_r, g_perp)
    inner = 0.5 * np.hypot(omega_l - omega_r, g_perp)
    half_par = 0.5 * g_par
    eps = np.stack(
        [-outer + half_par, outer + half_par, inner - half_par, -inner - half_par],
        axis=-1,
    )
    return dict(
        omega_l=omega_l, omega_r=omega_r, theta_l=theta_l, theta_r=theta_r,
        g_par=g_par, g_perp=g_perp, alpha=alpha, beta=beta, eps=eps,
    )


def jump_arrays(theta_l, theta_r, alpha, beta) -> np.ndarray:
    """Eigenoperator coefficients a_{mu l}, shape (..., 2, 6)."""
    sl, cl = np.sin(theta_l), np.cos(theta_l)
    sr, cr = np.sin(theta_r), np.cos(theta_r)
    sp, cp = np.sin(0.5 * (alpha + beta)), np.cos(0.5 * (alpha + beta))
    sm, cm = np.sin(0.5 * (alpha - beta)), np.cos(0.5 * (alpha - beta))
    sa, sb = np.sin(alpha), np.sin(beta)
    left = np.stack([sl * sp, -cl * sa, sl * cp, sl * cp, -cl * sb, -sl * sp], axis=-1)
    right = np.stack([sr * cm, -cr * sa, sr * sm, -sr * sm, cr * sb, sr * cm], axis=-1)
    return np.stack([left, right], axis=-2)


@dataclass(frozen=True)
class DressedSpectrum:
    """Dressed two-defect spectrum at one piezo voltage.

    ``omega`` and ``theta`` are indexed (left, right); ``eps`` holds eps_1..eps_4.
    """

    omega: np.ndarray
    theta: np.ndarray
    g_par: float
    g_perp: float
    alpha: float
    beta: float
    eps: np.ndarray


def dress(device: DeviceParams, vp: float) -> DressedSpectrum:
    eps_l = asymmetry_energy(device.left, vp)
    eps_r = asymmetry_energy(device.right, vp)
    s = spectrum_arrays(eps_l, device.left.delta, eps_r, device.right.delta, device.g)
    return DressedSpectrum(
        omega=_frozen([s["omega_l"], s["omega_r"]]),
        theta=_frozen([s["theta_l"], s["theta_r"]]),
        g_par=float(s["g_par"]),
        g_perp=float(s["g_perp"]),
        alpha=float(s["alpha"]),
        beta=float(s["beta"]),
        eps=_frozen(s["eps"]),
    )


@dataclass(frozen=True)
class TransitionTable:
    """The six channels in the fixed order (3,2), (1,2), (4,2), (1,3), (4,3), (1,4).

    ``lower``/``upper`` are 0-based level indices and ``energy`` is the signed
    eps[upper] - eps[lower].
    """

    lower: np.ndarray
    upper: np.ndarray
    energy: np.ndarray

    @property
    def inverted(self) -> np.ndarray:
        return self.energy < 0


def transition_table(spec: DressedSpectrum) -> TransitionTable:
    eps = np.asarray(spec.eps)
    lower = CHANNEL_LOWER.copy()
    upper = CHANNEL_UPPER.copy()
    lower.flags.writeable = False
    upper.flags.writeable = False
    return TransitionTable(lower, upper, _frozen(eps[CHANNEL_UPPER] - eps[CHANNEL_LOWER]))


@dataclass(frozen=True)
class JumpTable:
    """Coefficients a[mu, l] of the transition eigenoperators.

    ``a0[mu]`` = (cos theta_mu cos alpha, cos theta_mu cos beta), the weights of
    the diagonal (pure dephasing) part; not used for rates.
    """

    a: np.ndarray
    a0: np.ndarray


def jump_table(spec: DressedSpectrum) -> JumpTable:
    a = jump_arrays(spec.theta[0], spec.theta[1], spec.alpha, spec.beta)
    ct = np.cos(spec.theta)
    a0 = np.stack([ct * np.cos(spec.alpha), ct * np.cos(spec.beta)], axis=-1)
    return JumpTable(a=_frozen(a), a0=_frozen(a0))


@dataclass(frozen=True)
class ResonanceInterval:
    """Returned by :func:`find_resonances` when omega_L == omega_R on the whole range."""

    vp_min: float
    vp_max: float


def _detuning(device: DeviceParams, vp):
    return np.hypot(asymmetry_energy(device.left, vp), device.left.delta) - np.hypot(
        asymmetry_energy(device.right, vp), device.right.delta
    )


def find_resonances(device: DeviceParams, vp_range=(-60.0, 40.0), grid: int = 2001,
                    tol: float = 1e-9):
    """Voltages where omega_L(V) = omega_R(V) inside ``vp_range``.

    Roots are bracketed by sign changes on a uniform grid and refined by
    bisection until |omega_L - omega_R| < ``tol`` GHz. Returns a sorted list of
    voltages, or a :class:`ResonanceInterval` if the detuning vanishes on every
    grid point (identical defects).
    """
    lo, hi = map(float, vp_range)
    if not lo < hi:
        raise ValueError(f"empty voltage range {vp_range}")
    if grid < 2:
        raise ValueError("grid needs at least 2 points")
    vs = np.linspace(lo, hi, grid)
    d = _detuning(device, vs)
    if np.all(np.abs(d) < tol):
        return ResonanceInterval(lo, hi)

    roots = []
    for i in range(grid - 1):
        if d[i] == 0.0:
            roots.append(float(vs[i]))
            continue
        if d[i] * d[i + 1] >= 0:
            continue
        a, b, fa = vs[i], vs[i + 1], d[i]
        for _ in range(200):
            mid = 0.5 * (a + b)
            fm = _detuning(device, mid)
            if abs(fm) < tol or mid in (a, b):
                break
            if fa * fm < 0:
                b = mid
            else:
                a, fa = mid, fm
        roots.append(float(mid))
    if d[-1] == 0.0:
        roots.append(float(vs[-1]))
    return roots

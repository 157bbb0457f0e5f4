import numpy as np
import pytest
from hypothesis import strategies as st

from defect_diode import REFERENCE_DEVICE, DefectParams, DeviceParams, ReservoirParams

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def reference_device():
    return REFERENCE_DEVICE


@pytest.fixture
def symmetric_device():
    d = DefectParams(1.3, 0.3, 3.9)
    return DeviceParams(d, d, 0.85)


def baths(t_left, t_right, mhz_left=3.0, ratio=1.0):
    left = ReservoirParams.from_mhz(t_left, mhz_left)
    return left, ReservoirParams(t_right, left.gamma * ratio)


defects = st.builds(
    DefectParams,
    delta=st.floats(0.2, 10.0),
    slope=st.floats(-0.5, 0.5),
    offset=st.floats(-10.0, 10.0),
)
devices = st.builds(DeviceParams, left=defects, right=defects, g=st.floats(0.0, 2.0))
voltages = st.floats(-60.0, 40.0)
reservoirs = st.builds(ReservoirParams, temperature=st.floats(0.02, 10.0),
                       gamma=st.floats(1e-4, 0.1))


def random_physical_rates(rng, n):
    """Vectorised random draws through the full spectrum -> rates pipeline.

    Returns per-draw (A, B) of shape (n, 2, 6), the signed channel energies
    (n, 6) and the spectrum eigenvalues (n, 4).
    """
    from defect_diode.rates import rate_arrays
    from defect_diode.spectrum import CHANNEL_LOWER, CHANNEL_UPPER, jump_arrays, spectrum_arrays

    vp = rng.uniform(-60, 40, n)
    s = spectrum_arrays(
        rng.uniform(-0.5, 0.5, n) * vp + rng.uniform(-10, 10, n), rng.uniform(0.2, 10, n),
        rng.uniform(-0.5, 0.5, n) * vp + rng.uniform(-10, 10, n), rng.uniform(0.2, 10, n),
        rng.uniform(0, 2, n),
    )
    a = jump_arrays(s["theta_l"], s["theta_r"], s["alpha"], s["beta"])
    energy = s["eps"][:, CHANNEL_UPPER] - s["eps"][:, CHANNEL_LOWER]
    gamma = 10 ** rng.uniform(-4, -1, (n, 2))
    temps = 20.836619 * 10 ** rng.uniform(np.log10(0.02), 1, (n, 2))
    A, B, swap, _ = rate_arrays(energy, a, gamma, temps)
    return A, B, energy, s["eps"]

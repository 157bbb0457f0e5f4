import numpy as np
import pytest

from conftest import baths
from defect_diode import REFERENCE_DEVICE, ReservoirParams, heat_report
from defect_diode.lowtemp import (
    REGIME_BOLTZMANN_LIMIT,
    approximate_current,
    compare_exact_approx,
    lowtemp_generator,
    lowtemp_heat_current,
    lowtemp_steady_state,
)
from defect_diode.rates import channel_rates
from defect_diode.spectrum import dress, jump_table, transition_table
from defect_diode.steadystate import SingularGeneratorError


def _model(res, vp, device=REFERENCE_DEVICE):
    spec = dress(device, vp)
    return lowtemp_generator(channel_rates(transition_table(spec), jump_table(spec), res), spec)


def test_generator_structure():
    m = _model(baths(0.005, 0.01), 0.0)
    for gen in m.generators:
        assert np.abs(gen.sum(axis=0)).max() < 1e-15 * np.abs(gen).max()
    # no left activation on 1-3 or 1-4
    assert m.generators[0][2, 0] == 0.0 and m.generators[0][3, 0] == 0.0
    assert m.generators[1][2, 0] > 0.0
    assert list(m.reduced_system[3]) == [1.0, 1.0, 1.0, 1.0]


def test_truncated_state_solves_reduced_system():
    m = _model(baths(0.005, 0.01), 13.9)
    rho = lowtemp_steady_state(m).rho
    assert m.reduced_system @ rho == pytest.approx([0, 0, 0, 1], abs=1e-12)


def test_zero_temperature_limit_is_ground_state():
    m = _model(baths(1e-4, 2e-4), -20.0)
    assert lowtemp_steady_state(m).rho == pytest.approx([1, 0, 0, 0], abs=1e-12)
    exact = heat_report(REFERENCE_DEVICE, baths(1e-4, 2e-4), -20.0).populations.rho
    assert exact == pytest.approx([1, 0, 0, 0], abs=1e-12)


def test_regime_flag():
    assert _model(baths(0.005, 0.01), 0.0).in_regime
    assert not _model(baths(0.1, 10.0), 0.0).in_regime
    m = _model(baths(0.005, 0.01), 0.0)
    assert m.boltzmann.max() < REGIME_BOLTZMANN_LIMIT


@pytest.mark.parametrize("vp", [-50.0, -20.0, 0.0, 13.9, 30.0])
def test_populations_converge_as_temperature_falls(vp):
    errors = []
    for scale in (4, 2, 1, 0.5, 0.25):
        res = baths(0.05 * scale, 0.1 * scale)
        approx = lowtemp_steady_state(_model(res, vp)).rho
        exact = heat_report(REFERENCE_DEVICE, res, vp).populations.rho
        errors.append(np.abs(approx - exact).sum())
    assert np.all(np.diff(errors) < 0)
    assert errors[-1] < 1e-4


def test_forward_current_tracks_exact():
    res = baths(0.005, 0.01)
    for vp in (-20.0, 0.0, 13.9):
        q, ok = approximate_current(REFERENCE_DEVICE, res, vp)
        exact = heat_report(REFERENCE_DEVICE, res, vp).q[1]
        assert np.sign(q) == np.sign(exact)
        assert q == pytest.approx(exact, rel=0.05)


def test_right_bath_decoupled_carries_no_current():
    left = ReservoirParams.from_mhz(0.005, 3.0)
    m = _model((left, ReservoirParams(0.01, 0.0)), 0.0)
    assert lowtemp_heat_current(m) == 0.0


def test_fully_decoupled_model_is_singular():
    res = (ReservoirParams(0.005, 0.0), ReservoirParams(0.01, 0.0))
    with pytest.raises(SingularGeneratorError):
        lowtemp_steady_state(_model(res, 0.0))


def test_symmetric_device_truncation_is_one_sided(symmetric_device):
    # the right-only activation terms break the mirror symmetry of the exact model
    m = _model(baths(0.005, 0.01), 0.0, symmetric_device)
    assert m.generators[1][2, 0] > 0.0
    assert m.generators[0][2, 0] == 0.0


def test_comparison_rows():
    rows = compare_exact_approx(REFERENCE_DEVICE, baths(0.005, 0.01), [0.0, 13.9])
    assert [r.vp for r in rows] == [0.0, 13.9]
    for r in rows:
        assert r.rel_dev_f < 0.05
        assert r.q_exact_r == pytest.approx(heat_report(
            REFERENCE_DEVICE, baths(0.01, 0.005), r.vp).q[1], rel=1e-12)

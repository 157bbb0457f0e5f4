"""Steady-state heat transport through two strain-tuned, coupled two-level defects.

Each defect talks to its own bosonic reservoir. The package computes the dressed
spectrum, secular population rates, steady states, heat currents and the
rectification factor, plus the parameter sweeps behind the figure presets.
"""

from defect_diode.spectrum import (
    KB_OVER_H_GHZ_PER_K,
    REFERENCE_DEVICE,
    DefectParams,
    DeviceParams,
    DressedSpectrum,
    JumpTable,
    ResonanceInterval,
    TransitionTable,
    asymmetry_energy,
    dress,
    find_resonances,
    jump_table,
    transition_table,
)
from defect_diode.rates import (
    ChannelRates,
    RateMatrix,
    ReservoirParams,
    bose_occupation,
    channel_rates,
    rate_matrix,
    total_generator,
)
from defect_diode.steadystate import (
    HeatReport,
    Populations,
    RectificationResult,
    SingularGeneratorError,
    channel_fluxes,
    heat_current,
    heat_report,
    rectification,
    rectification_factor,
    steady_state,
    steady_state_closed_form,
)
from defect_diode.lowtemp import (
    ComparisonRow,
    LowTempModel,
    compare_exact_approx,
    lowtemp_generator,
    lowtemp_heat_current,
    lowtemp_steady_state,
)

__version__ = "0.1.0"

# coding: utf-8

# # Voltage-controlled heat valve
#
# Cold bath on the left (0.1 K), hot bath on the right. The voltage reshapes
# the spectrum and so switches the steady heat flow on and off.

# %%

import numpy as np

from defect_diode import REFERENCE_DEVICE, ReservoirParams, heat_report
from defect_diode.sweep import GHZ2_TO_WATT

left = ReservoirParams.from_mhz(0.1, 3.0)

# %% [markdown]
# Heat current into the system from the hot bath, for four hot temperatures.
# Currents are in GHz^2; one GHz^2 of energy flow is about 6.6e-16 W.

# %%

vps = np.linspace(-60, 40, 21)
print(f"{'V':>6}" + "".join(f"{t:>12g} K" for t in (0.5, 1, 5, 10)))
for vp in vps:
    qs = [heat_report(REFERENCE_DEVICE, (left, ReservoirParams(t, left.gamma)), vp).q[1]
          for t in (0.5, 1.0, 5.0, 10.0)]
    print(f"{vp:6.1f}" + "".join(f"{q:14.3e}" for q in qs))

# %% [markdown]
# On/off contrast of the valve along the sweep at T_hot = 10 K.

# %%

fine = np.linspace(-60, 40, 401)
hot = ReservoirParams(10.0, left.gamma)
q = np.array([heat_report(REFERENCE_DEVICE, (left, hot), v).q[1] for v in fine])
print(f"max {q.max():.3e} GHz^2 ({q.max() * GHZ2_TO_WATT:.2e} W) at {fine[q.argmax()]:.2f} V")
print(f"min {q.min():.3e} GHz^2 at {fine[q.argmin()]:.2f} V, contrast {q.max() / q.min():.1f}")

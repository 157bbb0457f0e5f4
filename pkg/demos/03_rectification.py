# coding: utf-8

# # Rectification
#
# Forward: left cold, right hot. Reverse: the two temperatures swap while each
# bath keeps its coupling. R = |Qf + Qr| / |Qf - Qr| is 0 for a perfect
# conductor of either sign and 1 for a perfect diode.

# %%

import numpy as np

from defect_diode import REFERENCE_DEVICE, ReservoirParams, find_resonances, rectification

left = ReservoirParams.from_mhz(0.1, 3.0)
hot = ReservoirParams(10.0, left.gamma)

# %%

print(f"{'V':>7} {'Q_f':>11} {'Q_r':>11} {'R':>7}")
for vp in [-50.0, *find_resonances(REFERENCE_DEVICE), -14.7, -11.3, 0.0, 30.0]:
    res = rectification(REFERENCE_DEVICE, (left, hot), vp)
    print(f"{vp:7.2f} {res.q_forward:11.3e} {res.q_reverse:11.3e} {res.r:7.4f}")

# %% [markdown]
# Rectification as the hot temperature grows, at fixed voltages.

# %%

temps = np.geomspace(0.2, 10, 6)
print(f"{'T_hot':>6}" + "".join(f"{v:>9g} V" for v in (-40.3, -13.0, 0.0, 13.9)))
for t in temps:
    rs = [rectification(REFERENCE_DEVICE, (left, ReservoirParams(t, left.gamma)), v).r
          for v in (-40.3, -13.0, 0.0, 13.9)]
    print(f"{t:6.2f}" + "".join(f"{r:11.4f}" for r in rs))

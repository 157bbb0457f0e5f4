# coding: utf-8

# # Millikelvin regime
#
# At 5 and 10 mK only a handful of activated transitions survive. A truncated
# rate model keeps those and replaces Bose factors by Boltzmann factors. Here
# it is compared with the full solver.

# %%

import numpy as np

from defect_diode import REFERENCE_DEVICE, ReservoirParams, compare_exact_approx

left = ReservoirParams.from_mhz(0.005, 3.0)
right = ReservoirParams(0.010, left.gamma)
rows = compare_exact_approx(REFERENCE_DEVICE, (left, right), np.linspace(-60, 40, 11))

# %%

print(f"{'V':>6} {'exact f':>11} {'approx f':>11} {'dev':>8} {'exact r':>11} {'approx r':>11} regime")
for r in rows:
    print(f"{r.vp:6.1f} {r.q_exact_f:11.3e} {r.q_approx_f:11.3e} {r.rel_dev_f:8.1e} "
          f"{r.q_exact_r:11.3e} {r.q_approx_r:11.3e} {r.in_regime}")

# %% [markdown]
# The forward columns agree closely. The reverse columns do not: the truncated
# model keeps two activation terms for the right bath only, and with the
# temperatures swapped those are no longer the leading ones.

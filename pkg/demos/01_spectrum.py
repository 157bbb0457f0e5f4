# coding: utf-8

# # Dressed spectrum of two strain-tuned defects
#
# Two tunneling defects share a piezo voltage. Each has its own strain map
# eps(V) = slope * V + offset and tunneling energy Delta. The bare splittings
# omega = sqrt(eps^2 + Delta^2) cross twice on the voltage window.

# %%

import numpy as np

from defect_diode import REFERENCE_DEVICE, dress, find_resonances, jump_table, transition_table
from defect_diode.spectrum import CHANNEL_LABELS

# %% [markdown]
# Where do the two splittings coincide?

# %%

roots = find_resonances(REFERENCE_DEVICE)
for v in roots:
    print(f"resonance at {v:8.4f} V")

# %% [markdown]
# A coarse table of both splittings and the four dressed levels.

# %%

print(f"{'V':>7} {'omega_L':>8} {'omega_R':>8}   eps_1..eps_4 (GHz)")
for vp in np.linspace(-60, 40, 11):
    s = dress(REFERENCE_DEVICE, vp)
    levels = " ".join(f"{e:8.3f}" for e in s.eps)
    print(f"{vp:7.1f} {s.omega[0]:8.3f} {s.omega[1]:8.3f}   {levels}")

# %% [markdown]
# At resonance the odd doublet is split only by the transverse coupling, so
# the channel between eps_3 and eps_4 is narrowest there.

# %%

for vp in (roots[1] - 2, roots[1], roots[1] + 2):
    s = dress(REFERENCE_DEVICE, vp)
    e = transition_table(s).energy
    print(f"V = {vp:7.3f}: " + ", ".join(f"{lab} {x:6.3f}" for lab, x in zip(CHANNEL_LABELS, e)))

# %% [markdown]
# Squared jump coefficients tell which bath drives which channel.

# %%

a2 = jump_table(dress(REFERENCE_DEVICE, roots[1])).a ** 2
print("channel   left    right")
for lab, l, r in zip(CHANNEL_LABELS, *a2):
    print(f"{lab:>7} {l:7.4f} {r:7.4f}")

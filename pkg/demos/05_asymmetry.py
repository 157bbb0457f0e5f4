# coding: utf-8

# # Where does rectification come from?
#
# Four devices: mirror-symmetric or not, with equal or unequal bath couplings.
# A fully symmetric setup cannot rectify.

# %%

import numpy as np

from defect_diode import REFERENCE_DEVICE, DefectParams, DeviceParams, ReservoirParams, rectification

twin = DefectParams(1.3, 0.3, 3.9)
cases = {
    "symmetric, equal coupling": (DeviceParams(twin, twin, 0.85), 1.0),
    "asymmetric levels": (REFERENCE_DEVICE, 1.0),
    "asymmetric coupling": (DeviceParams(twin, twin, 0.85), 10.0),
    "both": (REFERENCE_DEVICE, 10.0),
}

# %%

vps = np.linspace(-60, 40, 6)
print(f"{'case':<27}" + "".join(f"{v:>8g} V" for v in vps))
for name, (device, ratio) in cases.items():
    left = ReservoirParams.from_mhz(0.1, 3.0)
    right = ReservoirParams(0.5, ratio * left.gamma)
    rs = [rectification(device, (left, right), v).r for v in vps]
    print(f"{name:<27}" + "".join(f"{r:10.4f}" for r in rs))

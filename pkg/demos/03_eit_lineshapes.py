"""
Transparency windows under ground-state noise
=============================================

The probe susceptibility ``chi`` near two-photon resonance, for each family
of ground-state noise at the same raw rate. Population flowing from ``|b>``
to ``|c>`` leaves a population inversion on the probe transition and shows
up as gain (negative ``Im chi``).
"""

import numpy as np

from eitlambda import ChannelKind, dispersion_slope, normalized_rates, probe_params, rates_for_kind, susceptibility

p = probe_params(omega_c=0.16, gamma=1.0)
deltas = np.linspace(-0.3, 0.3, 7)

print("Im chi at rate 0.1")
print("delta   " + "".join(f"{k.value:>10}" for k in ChannelKind if k is not ChannelKind.GENERAL))
for d in deltas:
    row = [susceptibility(k, d, 0.0, p, rates_for_kind(k, 0.1)).imag for k in ChannelKind if k is not ChannelKind.GENERAL]
    print(f"{d:+.2f}  " + "".join(f"{v:10.4f}" for v in row))

# The numeric steady state and the closed forms agree.
r = rates_for_kind("depol", 0.1)
print("\ndepol chi(0.1, 0): numeric", susceptibility("depol", 0.1, 0, p, r),
      " closed", susceptibility("depol", 0.1, 0, p, r, method="closed"))

# Slope of Re chi at line center sets the group index. The "matched" rates
# agree to first order in the rate, which is only a good guide when the rate
# is far below |Omega_c|^2.
for eta in (1e-4, 1e-2):
    slopes = {k.value: dispersion_slope(k, p, r) for k, r in normalized_rates(eta).items() if k is not ChannelKind.IDEAL}
    print(f"\neta_z = {eta:g}: first-order estimate {2 / (4 * eta + 0.16**2):.2f}")
    for k, s in slopes.items():
        print(f"  {k:>8}  {s:.2f}")

"""
Impulse response of the diffusion channel
=========================================

A unit burst of molecules released at the origin of an unbounded plane
spreads as a 2-D Gaussian. At distance r the concentration rises, peaks at
t = r^2 / (4D) and then decays like 1/t.
"""

import numpy as np

from diffusion_capacity import impulse_peak, impulse_response

##############################################################################
# Peak location and height
# ------------------------
# The peak time is the natural time unit of the model, tau0.

dist, diff_coeff = 2.0, 1.0
t_peak, g_peak = impulse_peak(dist, diff_coeff)
print(f"peak at t={t_peak:.6f}, g={g_peak:.10f}")

##############################################################################
# Sampled curve
# -------------
# A coarse table is enough to see the asymmetry: fast rise, slow tail.

for t in np.geomspace(0.1, 20.0, 12):
    g = impulse_response(dist, t, diff_coeff)
    bar = "#" * int(60 * g / g_peak)
    print(f"t={t:8.3f}  g/g_peak={g / g_peak:6.3f}  {bar}")

##############################################################################
# Late-time tail
# --------------
# For t >> tau0 the exponential factor tends to 1, so t * g(t) flattens to
# 1 / (4 pi D).

for t in (1e2, 1e3, 1e4):
    print(f"t={t:g}: t*g = {t * impulse_response(dist, t, diff_coeff):.6f}"
          f"  (limit {1 / (4 * np.pi * diff_coeff):.6f})")

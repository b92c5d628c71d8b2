"""
Symbol durations from the threshold rules
=========================================

The receiver reads a 1 when the concentration is at least 2S and a 0 when
it is at most S. Each symbol lasts exactly long enough for the
concentration to reach the level the next reading needs. Everything below
is in normalized units: time in tau0, rate in 4 pi D S.
"""

import numpy as np

from diffusion_capacity import (
    NormalizedParams,
    PhysicalParams,
    normalize,
    solve_durations,
    solve_t11,
)
from diffusion_capacity.simulator import effective_alpha

##############################################################################
# One operating point
# -------------------
# T01 is the rise time from an empty medium, T10 the decay time from 2S
# back to S.

d = solve_durations(NormalizedParams(f_tilde=3.9))
print(f"F~=3.9: T01={d.t01:.6f}  T10={d.t10:.6f}  T01+T10={d.t01 + d.t10:.4f}")

##############################################################################
# Sweeping the rate
# -----------------
# A weak source needs a very long time to reach 2S. A strong source reaches
# it quickly but then floods the medium, so T10 has an interior minimum.

print(f"{'F~':>6} {'T01':>12} {'T10':>12}")
for f in (0.2, 0.5, 1.0, 2.15, 4.0, 10.0, 50.0):
    d = solve_durations(NormalizedParams(f_tilde=f))
    print(f"{f:6.2f} {d.t01:12.5g} {d.t10:12.5g}")

##############################################################################
# The 11 symbol
# -------------
# With T11 = T00 the residue of the previous pulse may already exceed 2S.
# Then the transmitter stays silent (alpha = 0) and the overshoot is
# reported. Alternatively keep alpha = 0 and solve for T11 itself.

d = solve_durations(NormalizedParams(f_tilde=3.9))
alpha, overshoot = effective_alpha(3.9, d)
print(f"alpha={alpha:.4f}  overshoot above 2S={overshoot:.4f}")
print(f"T11 with alpha=0: {solve_t11(3.9, d.t01, 0.0):.6f}")

##############################################################################
# From physical units
# -------------------
# D in m^2/s, r in m, S in molecules/m^2, F in molecules/s.

phys = PhysicalParams(diff_coeff=1e-9, distance=1e-5, sensitivity=1e12, max_rate=4.9e4)
norm = normalize(phys)
print(f"tau0={phys.tau0:.3g} s  F~={norm.f_tilde:.4f}  T00={norm.t00} tau0")
print("seconds per symbol:", np.round(np.array(solve_durations(norm).as_tuple()) * phys.tau0, 4))

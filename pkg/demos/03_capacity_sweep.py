"""
Capacity versus source strength
===============================

Given the four symbol durations, the number of distinct symbol sequences
of total length T grows like W^T. Capacity is log2(W). Sweeping the rate
trades fast rises against slow decays and yields a clear optimum.
"""

import numpy as np

from diffusion_capacity import SymbolDurations, count_blocks, solve_w
from diffusion_capacity.sweep import best_row, f_grid, sweep

##############################################################################
# Sanity check on a toy channel
# -----------------------------
# With unit durations every bit string is allowed, so W = 2 and C = 1.

print("W(1,1,1,1) =", solve_w(SymbolDurations(1, 1, 1, 1)).w)

##############################################################################
# Brute-force counting agrees
# ---------------------------
# For integer durations a dynamic program counts sequences directly.

d = SymbolDurations(1, 2, 3, 1)
counts = count_blocks(d, 2000)
print(f"log2 W = {solve_w(d).capacity:.6f}, counted = {counts.growth_rate(1000, 2000):.6f}")

##############################################################################
# The sweep
# ---------
# T00 = T11 = 1 tau0. Capacity is quoted per T00.

rows = sweep(f_grid(0.5, 20.0, 0.05))
best = best_row(rows)
print(f"optimum: F~={best.f_tilde:.2f}  C={best.capacity_per_t00:.4f} bits/T00"
      f"  T01+T10={best.t01 + best.t10:.3f}")

c = np.array([r.capacity_per_t00 for r in rows])
f = np.array([r.f_tilde for r in rows])
for target in (0.5, 1, 2, 3.9, 6, 10, 20):
    i = int(np.argmin(abs(f - target)))
    print(f"F~={f[i]:5.2f}  C={c[i]:.4f}  " + "#" * int(100 * c[i]))

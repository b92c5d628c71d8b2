"""
Sending bits through the channel
================================

Bits are mapped to symbols according to the channel state, molecules are
released, and the receiver thresholds the concentration at every symbol
boundary. In the one-step memory model the decoded string matches exactly.
"""

import numpy as np

from diffusion_capacity import NormalizedParams, simulate, solve_durations

f_tilde = 3.9
d = solve_durations(NormalizedParams(f_tilde=f_tilde))
rng = np.random.default_rng(0)

##############################################################################
# A short message
# ---------------
# Boundary readings sit exactly on S or 2S (or above 2S after a silent 11).

result = simulate("0110100111", d, f_tilde)
for sym, c in zip(result.symbols, result.markov.boundary_values):
    print(f"{sym.kind.value}  ends at t={sym.end:7.3f}  c={c:.6f}")
print("decoded:", result.decoded, "mismatches:", result.mismatches)

##############################################################################
# Many random messages
# --------------------

errors = 0
for _ in range(200):
    bits = "".join(map(str, rng.integers(0, 2, 128)))
    errors += simulate(bits, d, f_tilde, samples_per_symbol=1).mismatches
print("bit errors over 200 x 128 bits:", errors)

##############################################################################
# Full superposition
# ------------------
# The medium actually remembers every pulse. Summing them all shows how far
# the one-step model is from the true residue.

bits = "".join(map(str, rng.integers(0, 2, 64)))
full = simulate(bits, d, f_tilde, mode="full", samples_per_symbol=1)
print(f"full model: {full.mismatches} mismatches,"
      f" max boundary deviation {full.max_boundary_deviation:.3f} S")

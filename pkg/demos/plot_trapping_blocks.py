"""
Trapping blocks, tangent and cotangent states
=============================================

At g*tau = pi the photon numbers 1, 4, 9, 16, ... are trapping boundaries.
They split Fock space into blocks that a single atom transit never couples.
Each block carries either a tangent or a cotangent state, and both are left
unchanged by the passage of an atom.
"""

import math
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from micromaser import fock
from micromaser.jaynes_cummings import AtomState, apply_gain, build_gain_channel, build_rabi_table
from micromaser.states import build_block_state, detect_blocks

atom = AtomState.from_alpha(0.9)
g_tau = math.pi

# %%
# The block structure up to n = 24 (25 = 5^2 closes the last block).
blocks = detect_blocks(g_tau, 24)
for b in blocks:
    print(f"{str(b):24s} q={b.q} p={b.p}")

# %%
# Build each block state and check that one atom leaves it unchanged.
dim = 25
channel = build_gain_channel(build_rabi_table(g_tau, dim), atom, dim)
fig, ax = plt.subplots(figsize=(6, 3))
for b in blocks:
    d = build_block_state(b, atom, g_tau, dim=dim)
    rho = fock.pure_to_density(d)
    change = np.max(np.abs(apply_gain(rho, channel) - rho))
    print(f"{str(b):24s} max |rho' - rho| = {change:.1e}")
    ax.bar(np.arange(dim), np.abs(d) ** 2, label=str(b))
ax.set_xlabel("n")
ax.set_ylabel("|d_n|^2")
ax.legend(fontsize=7)
fig.tight_layout()
out = sys.argv[1] if len(sys.argv) > 1 else "trapping_blocks.svg"
fig.savefig(out)
print("wrote", out)

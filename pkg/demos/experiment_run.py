"""
Damped micromaser at experimental parameters
============================================

g = 4.4e4 Hz, T = 6.666 ms, gamma = 5 /s and g*tau = pi (tau close to
7.14e-5 s). One atom every T gives N_ex = 30 atoms per photon lifetime. The
period-two oscillation survives for tens of atoms but its amplitude decays as
the field relaxes towards lower photon numbers and loses coherence.

Run with an output directory to get the CSV, SVG and manifest files:

    python experiment_run.py out/
"""

import sys

import numpy as np

from micromaser.fock import off_diagonal_mass_ratio
from micromaser.output import emit_outputs
from micromaser.simulator import SimConfig, oscillation_envelope, run

cfg = SimConfig()
print(f"g*tau = {cfg.g_tau:.6f}, tau = {cfg.tau:.4e} s, N_ex = {cfg.n_ex:.3f}, theta_int = {cfg.theta_int:.3f}")

result = run(cfg)
s = result.series

# %%
for name in ("e_field", "y1", "y2"):
    env = oscillation_envelope(s, name)
    print(f"{name:8s} envelope per 10 atoms:", np.round(env.window_max, 4))

# %%
print("mean photon number:", round(s.records[0].mean_n, 4), "->", round(s.records[-1].mean_n, 4))
for k, rho in sorted(result.snapshots.items()):
    print(f"after {k:3d} atoms: off-diagonal mass ratio {off_diagonal_mass_ratio(rho):.4f}")

# %%
if len(sys.argv) > 1:
    manifest = emit_outputs(cfg, result, sys.argv[1])
    print("wrote", ", ".join(manifest["outputs"]))

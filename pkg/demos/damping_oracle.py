"""
Closed-form cavity decay against direct integration
===================================================

The zero-temperature decay map has a closed form in the number basis. Here
it is compared with a fourth-order Runge-Kutta integration of the master
equation, and the fourth-order convergence of the integrator is measured.
"""

import numpy as np

from micromaser import fock
from micromaser.damping import DecayParams, apply_decay, lindblad_oracle

rng = np.random.default_rng(0)
x = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
rho = x @ x.conj().T
rho /= np.trace(rho).real

# %%
for gt in (0.1, 0.5, 1.0):
    p = DecayParams(gamma=1.0, duration=gt)
    exact = apply_decay(rho, p)
    steps = int(np.ceil(gt / 1e-3))
    dev = np.max(np.abs(exact - lindblad_oracle(rho, p, steps)))
    print(f"gamma t = {gt}: max deviation {dev:.2e} with {steps} RK4 steps")

# %%
# Halving the step divides the error by about 16.
p = DecayParams(1.0, 0.1)
exact = apply_decay(rho, p)
errs = [np.max(np.abs(lindblad_oracle(rho, p, n) - exact)) for n in (100, 200, 400)]
print("errors:", ["%.2e" % e for e in errs], "ratios:", [round(a / b, 2) for a, b in zip(errs, errs[1:])])

# %%
# The mean photon number decays exactly as e^{-gamma t}.
for gt in (0.5, 2.0):
    n0 = fock.mean_photon_number(rho)
    n1 = fock.mean_photon_number(apply_decay(rho, DecayParams(1.0, gt)))
    print(f"<n>: {n0:.6f} -> {n1:.6f}, ratio {n1 / n0:.12f}, e^-gt {np.exp(-gt):.12f}")

"""Zero-temperature cavity decay between atoms.

:func:`apply_decay` is the exact number-basis solution of

    d rho / dt = -(gamma/2) (a†a rho + rho a†a - 2 a rho a†),

namely

    rho_mn(t) = e^{-gamma t (m+n)/2} sum_l sqrt(C(m+l, l) C(n+l, l))
                (1 - e^{-gamma t})^l rho_{m+l, n+l}(0).

:func:`lindblad_oracle` integrates the same equation with fixed-step RK4 and
exists only to check the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError, InvalidInputError
from .fock import annihilation

MAX_ORACLE_STEP = 1e-3


@dataclass(frozen=True)
class DecayParams:
    gamma: float
    duration: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise InvalidInputError(f"gamma must be finite and >= 0, got {self.gamma}")
        if not (math.isfinite(self.duration) and self.duration >= 0):
            raise InvalidInputError(f"duration must be finite and >= 0, got {self.duration}")

    @property
    def gamma_t(self) -> float:
        return self.gamma * self.duration


def _shift_coefficients(dim: int, gamma_t: float) -> np.ndarray:
    """``A[m, l] = e^{-gamma t m/2} sqrt(C(m+l, l) p^l)`` with ``p = 1 - e^{-gamma t}``.

    Built by the recurrence ``A[m, l] = A[m, l-1] sqrt(p (m+l)/l)`` so no
    factorial is ever formed.
    """
    p = -math.expm1(-gamma_t)
    m = np.arange(dim, dtype=float)
    coef = np.zeros((dim, dim))
    coef[:, 0] = np.exp(-0.5 * gamma_t * m)
    for l in range(1, dim):
        coef[:, l] = coef[:, l - 1] * np.sqrt(p * (m + l) / l)
    if not np.all(np.isfinite(coef)):
        raise IntegrityError("decay coefficients overflowed; dimension too large")
    return coef


def apply_decay(rho: np.ndarray, params: DecayParams) -> np.ndarray:
    """Exact decay of ``rho`` over ``params.duration``.

    The sum over ``l`` stops where ``m + l`` or ``n + l`` leaves the
    truncated space, which is exact because ``rho`` has no support there.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidInputError(f"density matrix must be square, got {rho.shape}")
    gamma_t = params.gamma_t
    if gamma_t == 0.0:
        return rho.copy()
    dim = rho.shape[0]
    coef = _shift_coefficients(dim, gamma_t)
    out = np.zeros_like(rho)
    for l in range(dim):
        k = dim - l
        # Kraus term E_l rho E_l† with E_l = sum_m coef[m, l] |m><m+l|
        a = coef[:k, l]
        out[:k, :k] += np.outer(a, a) * rho[l:, l:]
    return 0.5 * (out + out.conj().T)


def lindblad_rhs(rho: np.ndarray, gamma: float, a: np.ndarray, num: np.ndarray) -> np.ndarray:
    return -0.5 * gamma * (num @ rho + rho @ num - 2.0 * a @ rho @ a.conj().T)


def lindblad_oracle(rho: np.ndarray, params: DecayParams, steps: int) -> np.ndarray:
    """Classical RK4 integration of the damping master equation.

    ``steps`` must make ``gamma * dt <= 1e-3``.
    """
    rho = np.asarray(rho, dtype=complex)
    if steps < 1:
        raise InvalidInputError("steps must be >= 1")
    if params.duration == 0.0:
        return rho.copy()
    dt = params.duration / steps
    if params.gamma * dt > MAX_ORACLE_STEP:
        raise InvalidInputError(
            f"gamma*dt = {params.gamma * dt:.3e} exceeds {MAX_ORACLE_STEP:.0e}; use more steps"
        )
    dim = rho.shape[0]
    a = annihilation(dim)
    num = a.conj().T @ a
    g = params.gamma
    y = rho.copy()
    for _ in range(steps):
        k1 = lindblad_rhs(y, g, a, num)
        k2 = lindblad_rhs(y + 0.5 * dt * k1, g, a, num)
        k3 = lindblad_rhs(y + 0.5 * dt * k2, g, a, num)
        k4 = lindblad_rhs(y + dt * k3, g, a, num)
        y = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return y

"""Resonant Jaynes-Cummings gain kick for one atom transit.

Everything is in the interaction picture: a field state ``sum_n d_n |n>``
together with an atom ``alpha|a> + beta|b>`` evolves for time ``tau`` into

    sum_n d_n (alpha c_{n+1} |n> - i beta s_n |n-1>) |a>
  + sum_n d_n (beta c_n |n> - i alpha s_{n+1} |n+1>) |b>

with ``s_n = sin(g tau sqrt(n))`` and ``c_n = cos(g tau sqrt(n))``. Tracing
out the atom gives a two-Kraus-operator channel on the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, TruncationLeakError

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class AtomState:
    """Pump atom ``alpha|a> + beta|b>`` (``|a>`` upper, ``|b>`` lower)."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise InvalidInputError("atomic amplitudes must be finite")
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InvalidInputError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_alpha(cls, alpha: float) -> AtomState:
        """Real superposition with ``beta = sqrt(1 - alpha^2)``."""
        if not 0.0 <= alpha <= 1.0:
            raise InvalidInputError(f"real alpha must lie in [0, 1], got {alpha}")
        return cls(alpha, math.sqrt(1.0 - alpha * alpha))


@dataclass(frozen=True)
class RabiTable:
    g_tau: float
    s: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.s.size - 1


def build_rabi_table(g_tau: float, dim: int) -> RabiTable:
    """Tabulate ``sin`` and ``cos`` of ``g_tau * sqrt(n)`` for ``n = 0..dim``."""
    if dim < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {dim}")
    if not math.isfinite(g_tau):
        raise InvalidInputError(f"g*tau must be finite, got {g_tau}")
    theta = g_tau * np.sqrt(np.arange(dim + 1, dtype=float))
    s, c = np.sin(theta), np.cos(theta)
    s.setflags(write=False)
    c.setflags(write=False)
    return RabiTable(float(g_tau), s, c)


@dataclass(frozen=True)
class GainChannel:
    """Kraus pair for the atom leaving in ``|a>`` (``k_a``) or ``|b>`` (``k_b``)."""

    k_a: np.ndarray = field(repr=False)
    k_b: np.ndarray = field(repr=False)
    completeness_defect: float

    @property
    def dim(self) -> int:
        return self.k_a.shape[0]


def completeness_defect(k_a: np.ndarray, k_b: np.ndarray) -> float:
    eye = np.eye(k_a.shape[0])
    total = k_a.conj().T @ k_a + k_b.conj().T @ k_b
    return float(np.max(np.abs(total - eye)))


def build_gain_channel(
    table: RabiTable,
    atom: AtomState,
    dim: int | None = None,
    tol: float = COMPLETENESS_TOL,
) -> GainChannel:
    """Assemble the Kraus operators of one atom transit.

    The raising amplitude from ``|dim-1>`` out of the truncated space is
    dropped. If that makes ``K_a†K_a + K_b†K_b`` deviate from the identity
    by more than ``tol`` a :class:`TruncationLeakError` is raised: either
    ``dim`` is too small or ``g_tau * sqrt(dim)`` is not a trapping value.
    """
    if dim is None:
        dim = table.dim
    if dim > table.dim:
        raise InvalidInputError(f"table covers dim {table.dim}, requested {dim}")
    s, c = table.s, table.c
    alpha, beta = atom.alpha, atom.beta
    n = np.arange(dim)

    k_a = np.zeros((dim, dim), dtype=complex)
    k_a[n, n] = alpha * c[1 : dim + 1]
    k_a[n[:-1], n[1:]] = -1j * beta * s[1:dim]  # |n> -> |n-1>

    k_b = np.zeros((dim, dim), dtype=complex)
    k_b[n, n] = beta * c[:dim]
    k_b[n[1:], n[:-1]] = -1j * alpha * s[1:dim]  # |n> -> |n+1>

    defect = completeness_defect(k_a, k_b)
    if defect > tol:
        raise TruncationLeakError(
            f"gain channel completeness defect {defect:.3e} > {tol:.1e} "
            f"(dim={dim}, g*tau*sqrt(dim)/pi={table.g_tau * math.sqrt(dim) / math.pi:.9f}); "
            "enlarge n_max or choose a trapping cutoff"
        )
    k_a.setflags(write=False)
    k_b.setflags(write=False)
    return GainChannel(k_a, k_b, defect)


def apply_gain(rho: np.ndarray, ch: GainChannel) -> np.ndarray:
    """``K_a rho K_a† + K_b rho K_b†``."""
    if rho.shape != (ch.dim, ch.dim):
        raise InvalidInputError(f"rho has shape {rho.shape}, channel dim is {ch.dim}")
    ka, kb = ch.k_a, ch.k_b
    out = ka @ rho @ ka.conj().T + kb @ rho @ kb.conj().T
    # symmetrize away rounding so Hermiticity cannot drift over many atoms
    return 0.5 * (out + out.conj().T)


def evolve_joint_pure(field_state, atom: AtomState, table: RabiTable):
    """Joint pure evolution of field and atom, returned as two field branches.

    Returns ``(branch_a, branch_b)``, the unnormalized field vectors
    multiplying ``|a>`` and ``|b>`` after the transit. Amplitudes leaving the
    truncated space are dropped, as in :func:`build_gain_channel`.
    """
    d = np.asarray(field_state, dtype=complex)
    dim = d.size
    if dim > table.dim:
        raise InvalidInputError(f"table covers dim {table.dim}, state has dim {dim}")
    s, c = table.s[: dim + 1], table.c[: dim + 1]
    alpha, beta = atom.alpha, atom.beta

    d_up = np.append(d[1:], 0.0)  # d_{n+1}
    d_down = np.insert(d[:-1], 0, 0.0)  # d_{n-1}
    branch_a = d * alpha * c[1:] - 1j * beta * s[1:] * d_up
    branch_b = d * beta * c[:-1] - 1j * alpha * s[:-1] * d_down
    return branch_a, branch_b

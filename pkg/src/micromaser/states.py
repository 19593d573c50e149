"""Tangent and cotangent field states and the trapping-block structure.

A photon number ``n`` is a trapping boundary when ``g*tau*sqrt(n)`` is an
integer multiple of pi. Boundaries split Fock space into blocks
``[n_low, n_high]`` that the gain kick never couples. With
``q = g*tau*sqrt(n_low)/pi`` and ``p = g*tau*sqrt(n_high + 1)/pi`` a block
carries a tangent state when q is odd and p even, and a cotangent state when
q is even and p odd. Both are exact fixed points of the gain kick.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DegenerateAtomError, InvalidInputError, PoleError
from .fock import (
    annihilation,
    electric_field_expectation,
    normalize,
    pure_to_density,
    quadrature_squared_expectations,
)
from .jaynes_cummings import AtomState

BOUNDARY_TOL = 1e-9
_POLE_TOL = 1e-12


class BlockKind(enum.Enum):
    TANGENT = "tangent"
    COTANGENT = "cotangent"
    UNCLASSIFIED = "unclassified"


class Objective(enum.Enum):
    FIELD_AMPLITUDE = "field"
    Y1 = "y1"
    Y2 = "y2"


@dataclass(frozen=True)
class TrappingBlock:
    """Photon-number interval ``[n_low, n_high]`` between trapping boundaries.

    ``q`` and ``p`` are the integer multiples of pi at ``n_low`` and at
    ``n_high + 1``; ``p`` is None when the block runs into the truncation
    without reaching a boundary.
    """

    n_low: int
    n_high: int
    kind: BlockKind
    q: int | None = None
    p: int | None = None

    def __post_init__(self):
        if not 0 <= self.n_low <= self.n_high:
            raise InvalidInputError(f"invalid block bounds [{self.n_low}, {self.n_high}]")

    @property
    def size(self) -> int:
        return self.n_high - self.n_low + 1

    @property
    def classified(self) -> bool:
        return self.kind is not BlockKind.UNCLASSIFIED

    def overlaps(self, other: TrappingBlock) -> bool:
        return self.n_low <= other.n_high and other.n_low <= self.n_high

    def __str__(self):
        return f"[{self.n_low},{self.n_high}] {self.kind.value}"


def classify(q: int | None, p: int | None) -> BlockKind:
    if q is None or p is None:
        return BlockKind.UNCLASSIFIED
    if q % 2 == 1 and p % 2 == 0:
        return BlockKind.TANGENT
    if q % 2 == 0 and p % 2 == 1:
        return BlockKind.COTANGENT
    return BlockKind.UNCLASSIFIED


def trapping_multiple(g_tau: float, n: int, tol: float = BOUNDARY_TOL) -> int | None:
    """Integer ``k`` with ``g_tau*sqrt(n) = k*pi`` (relative ``tol``), else None."""
    x = g_tau * math.sqrt(n) / math.pi
    k = round(x)
    if abs(x - k) <= tol * max(1.0, abs(x)):
        return int(k)
    return None


def detect_blocks(g_tau: float, n_max: int, tol: float = BOUNDARY_TOL) -> list[TrappingBlock]:
    """Partition ``0..n_max`` into trapping blocks.

    The returned blocks are ordered, disjoint and cover ``0..n_max``. A block
    whose upper edge is not followed by a boundary (at most ``n_max + 1`` is
    probed) cannot be classified. Without any boundary at all the result is
    a single unclassified block.
    """
    if not (math.isfinite(g_tau) and g_tau > 0):
        raise InvalidInputError(f"g*tau must be positive and finite, got {g_tau}")
    if n_max < 0:
        raise InvalidInputError(f"n_max must be >= 0, got {n_max}")

    multiples = {0: 0}
    for n in range(1, n_max + 2):
        k = trapping_multiple(g_tau, n, tol)
        if k is not None and k > 0:
            multiples[n] = k
    starts = sorted(n for n in multiples if n <= n_max)

    blocks = []
    for i, lo in enumerate(starts):
        hi = starts[i + 1] - 1 if i + 1 < len(starts) else n_max
        q, p = multiples[lo], multiples.get(hi + 1)
        blocks.append(TrappingBlock(lo, hi, classify(q, p), q, p))
    return blocks


def is_trapping_configuration(blocks: Sequence[TrappingBlock]) -> bool:
    return len(blocks) > 1 or blocks[0].p is not None


def build_block_state(
    block: TrappingBlock,
    atom: AtomState,
    g_tau: float,
    seed_phase: complex = 1.0,
    dim: int | None = None,
) -> np.ndarray:
    """Normalized tangent or cotangent state confined to ``block``.

    Starting from ``d[n_low] = seed_phase`` the amplitudes follow

        tangent:    d_n =  i (alpha/beta) tan(g tau sqrt(n)/2) d_{n-1}
        cotangent:  d_n = -i (alpha/beta) cot(g tau sqrt(n)/2) d_{n-1}

    up to ``n_high``; everything outside the block is zero. ``dim`` defaults
    to ``n_high + 1``.
    """
    if not block.classified:
        raise InvalidInputError(f"block {block} is neither tangent nor cotangent")
    if atom.beta == 0:
        raise DegenerateAtomError("beta = 0: the recurrence ratio alpha/beta is undefined")
    if abs(abs(seed_phase) - 1.0) > 1e-12:
        raise InvalidInputError(f"seed phase must have unit modulus, got {seed_phase!r}")
    if dim is None:
        dim = block.n_high + 1
    if dim <= block.n_high:
        raise InvalidInputError(f"dim {dim} cannot hold block {block}")

    ratio = atom.alpha / atom.beta
    d = np.zeros(dim, dtype=complex)
    d[block.n_low] = seed_phase
    for n in range(block.n_low + 1, block.n_high + 1):
        half = 0.5 * g_tau * math.sqrt(n)
        sin_h, cos_h = math.sin(half), math.cos(half)
        if block.kind is BlockKind.TANGENT:
            if abs(cos_h) < _POLE_TOL:
                raise PoleError(f"tan pole at n={n} inside block {block}")
            factor = 1j * ratio * sin_h / cos_h
        else:
            if abs(sin_h) < _POLE_TOL:
                raise PoleError(f"cot pole at n={n} inside block {block}")
            factor = -1j * ratio * cos_h / sin_h
        d[n] = factor * d[n - 1]
    return normalize(d)


@dataclass(frozen=True)
class BlockWeight:
    """One term ``weight * |f_block>`` of a block superposition."""

    block: TrappingBlock
    weight: complex = 1.0
    seed_phase: complex = 1.0

    def __post_init__(self):
        if abs(abs(self.seed_phase) - 1.0) > 1e-12:
            raise InvalidInputError(f"seed phase must have unit modulus, got {self.seed_phase!r}")


def equal_weights(blocks: Sequence[TrappingBlock]) -> list[BlockWeight]:
    """Weights ``1/sqrt(k)`` and unit seed phases for ``k`` blocks."""
    w = 1.0 / math.sqrt(len(blocks))
    return [BlockWeight(b, w, 1.0) for b in blocks]


def _check_disjoint(parts: Sequence[BlockWeight]) -> None:
    if not parts:
        raise InvalidInputError("at least one block is required")
    for i, pi in enumerate(parts):
        for pj in parts[i + 1 :]:
            if pi.block.overlaps(pj.block):
                raise InvalidInputError(f"blocks {pi.block} and {pj.block} overlap")


def superpose(
    parts: Sequence[BlockWeight],
    atom: AtomState,
    g_tau: float,
    dim: int | None = None,
) -> np.ndarray:
    """Normalized ``sum_j weight_j |f_j>`` over disjoint blocks."""
    _check_disjoint(parts)
    if all(p.weight == 0 for p in parts):
        raise InvalidInputError("all superposition weights are zero")
    if dim is None:
        dim = max(p.block.n_high for p in parts) + 1
    total = np.zeros(dim, dtype=complex)
    for p in parts:
        total += p.weight * build_block_state(p.block, atom, g_tau, p.seed_phase, dim)
    return normalize(total)


def objective_operator(objective: Objective, dim: int) -> np.ndarray:
    """Dense Hermitian matrix whose expectation the optimizer maximizes."""
    a = annihilation(dim)
    ad = a.conj().T
    if objective is Objective.FIELD_AMPLITUDE:
        return 1j * (ad - a)
    if objective is Objective.Y1:
        return 0.5 * (a @ a + ad @ ad)
    return 0.5j * (ad @ ad - a @ a)


def objective_value(state: np.ndarray, objective: Objective) -> float:
    rho = pure_to_density(state)
    if objective is Objective.FIELD_AMPLITUDE:
        return abs(electric_field_expectation(rho))
    y1, y2 = quadrature_squared_expectations(rho)
    return abs(y1) if objective is Objective.Y1 else abs(y2)


MAX_GRID_EVALUATIONS = 20_000_000


def optimize_seed_phases(
    parts: Sequence[BlockWeight],
    atom: AtomState,
    g_tau: float,
    objective: Objective = Objective.FIELD_AMPLITUDE,
    grid_points: int = 360,
) -> list[BlockWeight]:
    """Grid search over relative seed phases maximizing ``|<objective>|``.

    The first part keeps seed phase 1; every other part scans
    ``exp(2 pi i j / grid_points)``, ``j = 0..grid_points-1``, over the full
    Cartesian grid. Ties (within 1e-12 relative) go to the earliest grid
    point, so a phase-independent objective returns all-unit phases.
    """
    if len(parts) < 2:
        raise InvalidInputError("phase optimization needs at least two blocks")
    if grid_points < 2:
        raise InvalidInputError(f"grid_points must be >= 2, got {grid_points}")
    _check_disjoint(parts)
    k = len(parts)
    if grid_points ** (k - 1) > MAX_GRID_EVALUATIONS:
        raise InvalidInputError(f"grid of {grid_points}^{k - 1} points is too large")

    dim = max(p.block.n_high for p in parts) + 1
    vecs = np.array([p.weight * build_block_state(p.block, atom, g_tau, 1.0, dim) for p in parts])
    norm2 = float(np.sum(np.abs(vecs) ** 2))  # disjoint supports: phase independent
    op = objective_operator(objective, dim)
    gram = vecs.conj() @ op @ vecs.T / norm2  # gram[j, l] = <v_j|O|v_l>

    angles = 2.0 * np.pi * np.arange(grid_points) / grid_points
    mesh = np.meshgrid(*([angles] * (k - 1)), indexing="ij")
    phases = [np.ones_like(mesh[0], dtype=complex)] + [np.exp(1j * m) for m in mesh]
    value = np.zeros(mesh[0].shape, dtype=complex)
    for j in range(k):
        for l in range(k):
            value += phases[j].conj() * phases[l] * gram[j, l]
    score = np.abs(value.real).ravel()

    best = score.max()
    idx = int(np.argmax(score >= best - 1e-12 * max(1.0, best)))
    pick = np.unravel_index(idx, mesh[0].shape)
    out = [replace(parts[0], seed_phase=1.0)]
    for j, p in enumerate(parts[1:]):
        out.append(replace(p, seed_phase=complex(np.exp(1j * angles[pick[j]]))))
    return out

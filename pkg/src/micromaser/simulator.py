"""Regularly pumped micromaser: alternate gain kicks with cavity decay."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, fields, replace
from typing import Sequence

import numpy as np

from .damping import DecayParams, apply_decay
from .errors import InvalidInputError, PhysicsInconsistencyError
from .fock import (
    electric_field_expectation,
    hermiticity_defect,
    mean_photon_number,
    pure_to_density,
    purity,
    quadrature_squared_expectations,
    trace_error,
    validate_density,
)
from .jaynes_cummings import AtomState, GainChannel, apply_gain, build_gain_channel, build_rabi_table
from .states import (
    BOUNDARY_TOL,
    BlockKind,
    BlockWeight,
    Objective,
    TrappingBlock,
    detect_blocks,
    equal_weights,
    is_trapping_configuration,
    optimize_seed_phases,
    superpose,
)

G_COUPLING = 4.4e4  # Hz
T_BETWEEN = 6.666e-3  # s
GAMMA = 5.0  # 1/s
ALPHA = 0.9
N_MAX = 35
DEFAULT_SNAPSHOTS = (0, 10, 20, 100)

# cotangent [0,0] + tangent [1,3] + cotangent [4,8] at g*tau = pi
DEFAULT_BLOCKS = (
    TrappingBlock(0, 0, BlockKind.COTANGENT, 0, 1),
    TrappingBlock(1, 3, BlockKind.TANGENT, 1, 2),
    TrappingBlock(4, 8, BlockKind.COTANGENT, 2, 3),
)


class DecayWindow(enum.Enum):
    FULL_T = "full"
    T_MINUS_TAU = "minus-tau"


class Sampling(enum.Enum):
    BEFORE_NEXT = "before-next"
    AFTER_KICK = "after-kick"


# Seed phases of the default run. With unit phases and real alpha, beta every
# cross-block coherence entering <E> and <Y1> is real, so only <Y2> would
# oscillate; a relative phase of i on the tangent and second cotangent block
# makes all three observables oscillate.
EXPERIMENT_SEED_PHASES = (1.0, 1j, 1j)


def default_parts(seed_phases: Sequence[complex] | None = None) -> list[BlockWeight]:
    """Equal-weight superposition of :data:`DEFAULT_BLOCKS`, unit phases by default."""
    parts = equal_weights(DEFAULT_BLOCKS)
    if seed_phases is None:
        return parts
    if len(seed_phases) != len(parts):
        raise InvalidInputError(f"expected {len(parts)} seed phases, got {len(seed_phases)}")
    return [replace(p, seed_phase=complex(s)) for p, s in zip(parts, seed_phases)]


@dataclass(frozen=True)
class SimConfig:
    """Physical and numerical parameters of one run.

    ``tau`` defaults to ``pi / g`` so that ``g*tau = pi`` exactly (about
    7.14e-5 s at the default coupling). ``parts=None`` means the default
    three-block superposition with :data:`EXPERIMENT_SEED_PHASES`.
    ``optimize_grid > 0`` replaces the seed phases by a grid search on
    ``objective`` before the run.
    """

    g: float = G_COUPLING
    tau: float = math.pi / G_COUPLING
    T: float = T_BETWEEN
    gamma: float = GAMMA
    atom: AtomState = field(default_factory=lambda: AtomState.from_alpha(ALPHA))
    n_max: int = N_MAX
    parts: tuple[BlockWeight, ...] | None = None
    atom_count: int = 100
    field_prefactor: float = 1.0
    decay_window: DecayWindow = DecayWindow.FULL_T
    snapshot_atoms: tuple[int, ...] = DEFAULT_SNAPSHOTS
    sampling: Sampling = Sampling.BEFORE_NEXT
    block_tol: float = BOUNDARY_TOL
    optimize_grid: int = 0
    objective: Objective = Objective.FIELD_AMPLITUDE

    def __post_init__(self):
        for name in ("g", "tau", "T"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidInputError(f"{name} must be positive and finite, got {v}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise InvalidInputError(f"gamma must be finite and >= 0, got {self.gamma}")
        if self.tau >= self.T:
            raise InvalidInputError(f"tau ({self.tau}) must be shorter than T ({self.T})")
        if self.n_max < 0 or self.atom_count < 0:
            raise InvalidInputError("n_max and atom_count must be non-negative")
        if self.field_prefactor <= 0:
            raise InvalidInputError("field prefactor must be positive")
        if any(k < 0 for k in self.snapshot_atoms):
            raise InvalidInputError("snapshot indices must be non-negative")
        if self.parts is not None:
            object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "snapshot_atoms", tuple(sorted(set(self.snapshot_atoms))))

    @property
    def dim(self) -> int:
        return self.n_max + 1

    @property
    def g_tau(self) -> float:
        return self.g * self.tau

    @property
    def n_ex(self) -> float:
        """Atoms per photon lifetime, ``1/(gamma T)``."""
        return math.inf if self.gamma == 0 else 1.0 / (self.gamma * self.T)

    @property
    def t_cav(self) -> float:
        return math.inf if self.gamma == 0 else 1.0 / self.gamma

    @property
    def theta_int(self) -> float:
        """Pumping parameter ``g tau sqrt(N_ex)``."""
        return self.g_tau * math.sqrt(self.n_ex)

    @property
    def decay_duration(self) -> float:
        if self.decay_window is DecayWindow.T_MINUS_TAU:
            return self.T - self.tau
        return self.T

    def decay_params(self) -> DecayParams:
        return DecayParams(self.gamma, self.decay_duration)

    def to_dict(self) -> dict:
        """Flat, JSON-friendly echo of every field."""
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, enum.Enum):
                v = v.value
            elif isinstance(v, AtomState):
                v = {"alpha": [v.alpha.real, v.alpha.imag], "beta": [v.beta.real, v.beta.imag]}
            elif f.name == "parts":
                v = None if v is None else [_part_dict(p) for p in v]
            elif isinstance(v, tuple):
                v = list(v)
            out[f.name] = v
        return out


def _part_dict(p: BlockWeight) -> dict:
    w, s = complex(p.weight), complex(p.seed_phase)
    return {
        "n_low": p.block.n_low,
        "n_high": p.block.n_high,
        "kind": p.block.kind.value,
        "weight": [w.real, w.imag],
        "seed_phase": [s.real, s.imag],
    }


def check_consistency(cfg: SimConfig, parts: Sequence[BlockWeight]) -> list[TrappingBlock]:
    """Check requested blocks against the trapping structure of ``cfg.g_tau``.

    Returns the detected blocks; raises :class:`PhysicsInconsistencyError`
    if the configuration has no trapping boundary or a requested block is
    not one of the detected tangent/cotangent blocks.
    """
    detected = detect_blocks(cfg.g_tau, cfg.n_max, cfg.block_tol)
    if not is_trapping_configuration(detected):
        raise PhysicsInconsistencyError(
            f"g*tau = {cfg.g_tau!r} has no trapping boundary up to n = {cfg.n_max + 1}; "
            "tangent/cotangent states cannot be built"
        )
    spans = {(b.n_low, b.n_high): b for b in detected}
    for p in parts:
        b = p.block
        match = spans.get((b.n_low, b.n_high))
        if match is None or not match.classified:
            found = ", ".join(str(d) for d in detected)
            raise PhysicsInconsistencyError(
                f"requested block {b} is not a tangent/cotangent block at g*tau = {cfg.g_tau!r} "
                f"(detected: {found})"
            )
        if match.kind is not b.kind:
            raise PhysicsInconsistencyError(f"block {b} is {match.kind.value} at this g*tau")
    return detected


def resolve_parts(cfg: SimConfig) -> list[BlockWeight]:
    """Block superposition used for the run, after optional phase search."""
    parts = list(cfg.parts) if cfg.parts is not None else default_parts(EXPERIMENT_SEED_PHASES)
    check_consistency(cfg, parts)
    if cfg.optimize_grid > 0 and len(parts) >= 2:
        parts = optimize_seed_phases(parts, cfg.atom, cfg.g_tau, cfg.objective, cfg.optimize_grid)
    return parts


def prepare_initial_state(cfg: SimConfig, parts: Sequence[BlockWeight] | None = None) -> np.ndarray:
    if parts is None:
        parts = resolve_parts(cfg)
    psi = superpose(parts, cfg.atom, cfg.g_tau, dim=cfg.dim)
    return pure_to_density(psi)


def build_channel(cfg: SimConfig) -> GainChannel:
    table = build_rabi_table(cfg.g_tau, cfg.dim)
    return build_gain_channel(table, cfg.atom, cfg.dim)


def step(rho: np.ndarray, channel: GainChannel, decay: DecayParams) -> np.ndarray:
    """One atom transit followed by decay until the next atom arrives."""
    return validate_density(apply_decay(validate_density(apply_gain(rho, channel)), decay))


@dataclass(frozen=True)
class Record:
    atom: int
    e_field: float
    y1: float
    y2: float
    mean_n: float
    purity: float
    trace_error: float


COLUMNS = tuple(f.name for f in fields(Record))


@dataclass
class TimeSeries:
    records: list[Record] = field(default_factory=list)
    max_hermiticity_defect: float = 0.0

    def __len__(self):
        return len(self.records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records])


@dataclass
class RunResult:
    series: TimeSeries
    snapshots: dict[int, np.ndarray]
    parts: list[BlockWeight]
    completeness_defect: float


def observe(rho: np.ndarray, atom: int, prefactor: float = 1.0) -> Record:
    y1, y2 = quadrature_squared_expectations(rho)
    return Record(
        atom=atom,
        e_field=electric_field_expectation(rho, prefactor),
        y1=y1,
        y2=y2,
        mean_n=mean_photon_number(rho),
        purity=purity(rho),
        trace_error=trace_error(rho),
    )


def run(cfg: SimConfig) -> RunResult:
    """Inject ``cfg.atom_count`` atoms, recording observables per atom.

    Record ``k`` is taken after the ``k``-th atom and the following decay
    interval, just before atom ``k+1`` enters (or right after the kick with
    ``Sampling.AFTER_KICK``). Snapshot ``k`` is the state at the same point;
    snapshot 0 is the initial state.
    """
    parts = resolve_parts(cfg)
    rho = validate_density(prepare_initial_state(cfg, parts))
    channel = build_channel(cfg)
    decay = cfg.decay_params()

    series = TimeSeries()
    snapshots = {0: rho.copy()} if 0 in cfg.snapshot_atoms else {}
    for k in range(1, cfg.atom_count + 1):
        kicked = validate_density(apply_gain(rho, channel))
        rho = validate_density(apply_decay(kicked, decay))
        sample = kicked if cfg.sampling is Sampling.AFTER_KICK else rho
        series.records.append(observe(sample, k, cfg.field_prefactor))
        series.max_hermiticity_defect = max(series.max_hermiticity_defect, hermiticity_defect(sample))
        if k in cfg.snapshot_atoms:
            snapshots[k] = sample.copy()
    return RunResult(series, snapshots, parts, channel.completeness_defect)


@dataclass(frozen=True)
class Envelope:
    amplitudes: np.ndarray
    window_max: np.ndarray
    decaying: bool

    @property
    def final_ratio(self) -> float:
        """Last window maximum over the first (0 when both vanish)."""
        first = self.window_max[0]
        return 0.0 if first == 0 else float(self.window_max[-1] / first)


def oscillation_envelope(
    series: TimeSeries | np.ndarray,
    field_name: str = "e_field",
    window: int = 10,
    slack: float = 1e-6,
) -> Envelope:
    """Period-2 oscillation amplitude and its windowed maximum envelope.

    Amplitudes are ``|x_k - x_{k+1}| / 2``. The envelope is the maximum over
    consecutive non-overlapping windows of ``window`` amplitudes (a trailing
    partial window is kept); it is decaying when no window exceeds the
    previous one by more than ``slack``.
    """
    x = series.column(field_name) if isinstance(series, TimeSeries) else np.asarray(series, float)
    if x.size < 4:
        raise InvalidInputError(f"need at least 4 records, got {x.size}")
    amps = 0.5 * np.abs(np.diff(x))
    wmax = np.array([amps[i : i + window].max() for i in range(0, amps.size, window)])
    decaying = bool(np.all(np.diff(wmax) <= slack))
    return Envelope(amps, wmax, decaying)


def alternates(x: np.ndarray, atol: float = 0.0) -> bool:
    """True when successive differences strictly alternate in sign."""
    d = np.diff(np.asarray(x, dtype=float))
    prod = d[:-1] * d[1:]
    return bool(np.all(prod < -atol))

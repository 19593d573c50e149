"""Run configuration: flat ``key = value`` files, flag overrides, manifest echo.

Example file::

    # lossless check at the default interaction time
    gamma = 0
    atoms = 20
    blocks = 0-0, 1-3, 4-8
    seed_phases_deg = 0, 90, 90

Missing keys take the experimental defaults of :class:`SimConfig`.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Callable, Mapping

from .errors import ConfigError, IntegrityError, InvalidInputError, PhysicsInconsistencyError
from .jaynes_cummings import AtomState
from .simulator import (
    ALPHA,
    DEFAULT_BLOCKS,
    EXPERIMENT_SEED_PHASES,
    DecayWindow,
    Sampling,
    SimConfig,
    build_channel,
    check_consistency,
)
from .states import BlockKind, BlockWeight, Objective, TrappingBlock, detect_blocks, trapping_multiple


def _float(s: str) -> float:
    return float(s)


def _int(s: str) -> int:
    return int(s)


def _list(conv: Callable[[str], Any]) -> Callable[[str], list]:
    def parse(s: str) -> list:
        return [conv(tok.strip()) for tok in s.split(",") if tok.strip()]

    return parse


def _span(s: str) -> tuple[int, int]:
    lo, sep, hi = s.partition("-")
    if not sep:
        return int(lo), int(lo)
    return int(lo), int(hi)


def _enum(cls) -> Callable[[str], Any]:
    def parse(s: str):
        try:
            return cls(s.strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"expected one of {choices}") from None

    return parse


KEYS: dict[str, Callable[[str], Any]] = {
    "g": _float,
    "tau": _float,
    "T": _float,
    "gamma": _float,
    "alpha": complex,
    "beta": complex,
    "n_max": _int,
    "atoms": _int,
    "field_prefactor": _float,
    "decay_window": _enum(DecayWindow),
    "sampling": _enum(Sampling),
    "snapshots": _list(_int),
    "block_tol": _float,
    "optimize_phases": _int,
    "objective": _enum(Objective),
    "blocks": _list(_span),
    "weights": _list(complex),
    "seed_phases_deg": _list(_float),
}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    settings: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            settings[key] = KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from None
    return settings


def load_config_file(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text, str(path))


def _atom(settings: Mapping[str, Any]) -> AtomState:
    alpha = complex(settings.get("alpha", ALPHA))
    if "beta" in settings:
        return AtomState(alpha, settings["beta"])
    if alpha.imag == 0:
        return AtomState.from_alpha(alpha.real)
    return AtomState(alpha, math.sqrt(max(0.0, 1.0 - abs(alpha) ** 2)))


def _parts(settings: Mapping[str, Any], g_tau: float, n_max: int, tol: float) -> list[BlockWeight]:
    if "blocks" in settings:
        detected = {(b.n_low, b.n_high): b for b in detect_blocks(g_tau, n_max, tol)}
        blocks = []
        for lo, hi in settings["blocks"]:
            b = detected.get((lo, hi))
            if b is None or not b.classified:
                found = ", ".join(str(d) for d in detected.values())
                raise PhysicsInconsistencyError(
                    f"block [{lo},{hi}] is not a tangent/cotangent block at g*tau = {g_tau!r} "
                    f"(detected: {found})"
                )
            blocks.append(b)
        default_seeds = [1.0] * len(blocks)
    else:
        blocks = list(DEFAULT_BLOCKS)
        default_seeds = list(EXPERIMENT_SEED_PHASES)

    k = len(blocks)
    weights = settings.get("weights", [1.0 / math.sqrt(k)] * k)
    if len(weights) != k:
        raise ConfigError(f"{len(weights)} weights given for {k} blocks")
    if "seed_phases_deg" in settings:
        degs = settings["seed_phases_deg"]
        if len(degs) != k:
            raise ConfigError(f"{len(degs)} seed phases given for {k} blocks")
        seeds = [complex(math.cos(math.radians(d)), math.sin(math.radians(d))) for d in degs]
    else:
        seeds = [complex(s) for s in default_seeds]
    for idx, deg in settings.get("seed_phase_overrides", {}).items():
        if not 0 <= idx < k:
            raise ConfigError(f"--seed-phase block index {idx} outside 0..{k - 1}")
        seeds[idx] = complex(math.cos(math.radians(deg)), math.sin(math.radians(deg)))
    return [BlockWeight(b, w, s) for b, w, s in zip(blocks, weights, seeds)]


def build_config(settings: Mapping[str, Any]) -> SimConfig:
    """Turn parsed settings into a checked :class:`SimConfig`.

    Raises :class:`ConfigError` for values outside their domain and
    :class:`PhysicsInconsistencyError` when the requested blocks do not
    match the trapping structure or the gain channel would leak through
    the truncation.
    """
    base = SimConfig()
    try:
        g = settings.get("g", base.g)
        kwargs = dict(
            g=g,
            tau=settings.get("tau", math.pi / g),
            T=settings.get("T", base.T),
            gamma=settings.get("gamma", base.gamma),
            atom=_atom(settings),
            n_max=settings.get("n_max", base.n_max),
            atom_count=settings.get("atoms", base.atom_count),
            field_prefactor=settings.get("field_prefactor", base.field_prefactor),
            decay_window=settings.get("decay_window", base.decay_window),
            snapshot_atoms=tuple(settings.get("snapshots", base.snapshot_atoms)),
            sampling=settings.get("sampling", base.sampling),
            block_tol=settings.get("block_tol", base.block_tol),
            optimize_grid=settings.get("optimize_phases", base.optimize_grid),
            objective=settings.get("objective", base.objective),
        )
        probe = SimConfig(**kwargs)
        if probe.optimize_grid == 1 or probe.optimize_grid < 0:
            raise InvalidInputError("optimize_phases needs a grid of at least 2 points")
        parts = _parts(settings, probe.g_tau, probe.n_max, probe.block_tol)
        cfg = SimConfig(**kwargs, parts=tuple(parts))
    except InvalidInputError as exc:
        raise ConfigError(str(exc)) from None
    validate_physics(cfg)
    return cfg


def validate_physics(cfg: SimConfig) -> None:
    check_consistency(cfg, cfg.parts)
    try:
        build_channel(cfg)
    except IntegrityError as exc:
        raise PhysicsInconsistencyError(str(exc)) from None


def parse_config(path: str | Path | None = None, overrides: Mapping[str, Any] | None = None) -> SimConfig:
    """Load ``path`` (if any), apply ``overrides`` on top and build the config."""
    settings = load_config_file(path) if path is not None else {}
    settings.update(overrides or {})
    return build_config(settings)


def config_from_dict(d: Mapping[str, Any]) -> SimConfig:
    """Inverse of :meth:`SimConfig.to_dict`, used to replay a manifest."""
    atom = d["atom"]
    parts = None
    if d.get("parts") is not None:
        parts = tuple(
            BlockWeight(
                TrappingBlock(
                    p["n_low"],
                    p["n_high"],
                    BlockKind(p["kind"]),
                    *_qp(d["g"] * d["tau"], p["n_low"], p["n_high"], d["block_tol"]),
                ),
                complex(*p["weight"]),
                complex(*p["seed_phase"]),
            )
            for p in d["parts"]
        )
    return SimConfig(
        g=d["g"],
        tau=d["tau"],
        T=d["T"],
        gamma=d["gamma"],
        atom=AtomState(complex(*atom["alpha"]), complex(*atom["beta"])),
        n_max=d["n_max"],
        parts=parts,
        atom_count=d["atom_count"],
        field_prefactor=d["field_prefactor"],
        decay_window=DecayWindow(d["decay_window"]),
        snapshot_atoms=tuple(d["snapshot_atoms"]),
        sampling=Sampling(d["sampling"]),
        block_tol=d["block_tol"],
        optimize_grid=d["optimize_grid"],
        objective=Objective(d["objective"]),
    )


def _qp(g_tau: float, lo: int, hi: int, tol: float):
    return trapping_multiple(g_tau, lo, tol) if lo else 0, trapping_multiple(g_tau, hi + 1, tol)

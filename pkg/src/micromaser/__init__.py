"""Micromaser pumped by atoms in a coherent superposition of their two levels.

The field lives in a truncated Fock space. Each atom applies a
Jaynes-Cummings gain kick; between atoms the cavity decays at zero
temperature. Superpositions of tangent and cotangent states make the mean
field flip between two values from one atom to the next.
"""

from .damping import DecayParams, apply_decay, lindblad_oracle
from .errors import (
    ConfigError,
    DegenerateAtomError,
    IntegrityError,
    InvalidInputError,
    MicromaserError,
    PhysicsInconsistencyError,
    PoleError,
    TruncationLeakError,
)
from .fock import (
    electric_field_expectation,
    mean_photon_number,
    photon_distribution,
    pure_to_density,
    purity,
    quadrature_squared_expectations,
)
from .jaynes_cummings import (
    AtomState,
    GainChannel,
    RabiTable,
    apply_gain,
    build_gain_channel,
    build_rabi_table,
    evolve_joint_pure,
)
from .simulator import SimConfig, TimeSeries, oscillation_envelope, prepare_initial_state, run, step
from .states import (
    BlockKind,
    BlockWeight,
    Objective,
    TrappingBlock,
    build_block_state,
    detect_blocks,
    optimize_seed_phases,
    superpose,
)

__version__ = "0.1.0"

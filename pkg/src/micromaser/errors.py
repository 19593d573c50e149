"""Exception hierarchy shared by all modules."""


class MicromaserError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(MicromaserError, ValueError):
    """An argument is malformed, out of range, or of mismatched dimension."""


class IntegrityError(MicromaserError):
    """A density matrix or channel violated a numerical invariant."""


class TruncationLeakError(IntegrityError):
    """The gain channel loses probability through the Fock-space cutoff."""


class DegenerateAtomError(InvalidInputError):
    """The atomic state cannot seed a tangent/cotangent recurrence (beta == 0)."""


class PoleError(InvalidInputError):
    """A tan/cot pole fell inside a block interior."""


class PhysicsInconsistencyError(MicromaserError):
    """Parameters are individually valid but physically incompatible."""


class ConfigError(MicromaserError):
    """A configuration file or flag could not be parsed."""

"""Truncated Fock-space containers, ladder operators and observables.

Pure states are 1-D complex arrays ``d`` with ``d[n]`` the amplitude of
``|n>``; density matrices are 2-D complex arrays with ``rho[m, n] = <m|rho|n>``.
Both are plain numpy arrays. The checking helpers here are what the other
modules call after every map.
"""

from __future__ import annotations

import numpy as np

from .errors import IntegrityError, InvalidInputError

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
RESIDUE_TOL = 1e-10


def annihilation(dim: int) -> np.ndarray:
    """Dense lowering operator ``a`` on ``|0>, ..., |dim-1>``."""
    if dim < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {dim}")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).conj().T


def number(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def basis(dim: int, n: int) -> np.ndarray:
    if not 0 <= n < dim:
        raise InvalidInputError(f"level {n} outside 0..{dim - 1}")
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v


def normalize(amps) -> np.ndarray:
    """Return ``amps`` as a unit-norm complex vector."""
    v = np.asarray(amps, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise InvalidInputError("a pure state must be a non-empty 1-D array")
    if not np.all(np.isfinite(v)):
        raise IntegrityError("state contains non-finite amplitudes")
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise InvalidInputError("cannot normalize the zero vector")
    return v / norm


def pure_to_density(state) -> np.ndarray:
    """Projector ``|f><f|`` with ``rho[m, n] = d_m * conj(d_n)``."""
    d = np.asarray(state, dtype=complex)
    if d.ndim != 1 or d.size == 0:
        raise InvalidInputError("a pure state must be a non-empty 1-D array")
    return np.outer(d, d.conj())


def hermiticity_defect(rho: np.ndarray) -> float:
    return float(np.max(np.abs(rho - rho.conj().T)))


def trace_error(rho: np.ndarray) -> float:
    return float(abs(np.trace(rho) - 1.0))


def validate_density(
    rho: np.ndarray,
    *,
    hermitian_tol: float = HERMITIAN_TOL,
    trace_tol: float = TRACE_TOL,
) -> np.ndarray:
    """Raise :class:`IntegrityError` unless ``rho`` is a valid density matrix.

    Checks shape, finiteness, Hermiticity, unit trace and non-negative
    diagonal (down to ``-1e-12``). Returns ``rho`` unchanged so it can be
    used inline.
    """
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        raise InvalidInputError(f"density matrix must be square, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise IntegrityError("density matrix contains non-finite entries")
    herm = hermiticity_defect(rho)
    if herm > hermitian_tol:
        raise IntegrityError(f"Hermiticity defect {herm:.3e} exceeds {hermitian_tol:.1e}")
    terr = trace_error(rho)
    if terr > trace_tol:
        raise IntegrityError(f"trace error {terr:.3e} exceeds {trace_tol:.1e}")
    diag_min = float(np.min(rho.diagonal().real))
    if diag_min < -1e-12:
        raise IntegrityError(f"negative population {diag_min:.3e}")
    return rho


def _real_or_raise(value: complex, what: str) -> float:
    if abs(value.imag) > RESIDUE_TOL * max(1.0, abs(value.real)):
        raise IntegrityError(f"{what} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def _check_hermitian(rho: np.ndarray) -> None:
    herm = hermiticity_defect(rho)
    if herm > HERMITIAN_TOL:
        raise IntegrityError(f"Hermiticity defect {herm:.3e} exceeds {HERMITIAN_TOL:.1e}")


def electric_field_expectation(rho: np.ndarray, prefactor: float = 1.0) -> float:
    """Mean field ``prefactor * i * sum_n sqrt(n) (rho[n-1, n] - rho[n, n-1])``.

    The sum runs over the whole truncated range. ``prefactor`` stands for the
    combined constant ``sqrt(omega / 2V)``.
    """
    if prefactor <= 0:
        raise InvalidInputError("field prefactor must be positive")
    _check_hermitian(rho)
    sq = np.sqrt(np.arange(1, rho.shape[0], dtype=float))
    upper = np.diagonal(rho, offset=1)  # rho[n-1, n]
    lower = np.diagonal(rho, offset=-1)  # rho[n, n-1]
    value = prefactor * 1j * np.sum(sq * (upper - lower))
    return _real_or_raise(complex(value), "<E>")


def quadrature_squared_expectations(rho: np.ndarray) -> tuple[float, float]:
    """Expectations of ``Y1 = (a^2 + a†^2)/2`` and ``Y2 = i(a†^2 - a^2)/2``.

    With ``S = tr(rho a^2) = sum_n sqrt(n(n-1)) rho[n, n-2]`` these are
    ``Re S`` and ``Im S``.
    """
    _check_hermitian(rho)
    dim = rho.shape[0]
    if dim < 3:
        return 0.0, 0.0
    n = np.arange(2, dim, dtype=float)
    s = complex(np.sum(np.sqrt(n * (n - 1)) * np.diagonal(rho, offset=-2)))
    return float(s.real), float(s.imag)


def photon_distribution(rho: np.ndarray) -> np.ndarray:
    """``P_n = Re rho[n, n]``."""
    p = rho.diagonal().real.copy()
    if abs(p.sum() - 1.0) > TRACE_TOL:
        raise IntegrityError(f"populations sum to {p.sum():.12f}")
    return p


def mean_photon_number(rho: np.ndarray) -> float:
    p = photon_distribution(rho)
    return float(np.dot(np.arange(p.size), p))


def purity(rho: np.ndarray) -> float:
    # tr(rho^2) = sum |rho_mn|^2 for Hermitian rho
    return float(np.sum(np.abs(rho) ** 2))


def off_diagonal_mass_ratio(rho: np.ndarray) -> float:
    """``sum_{m != n} |rho_mn| / sum_{m,n} |rho_mn|``."""
    mag = np.abs(rho)
    total = mag.sum()
    return float((total - np.trace(mag)) / total)

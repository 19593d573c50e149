import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from micromaser import fock
from micromaser.errors import IntegrityError, InvalidInputError
from micromaser.jaynes_cummings import AtomState
from micromaser.simulator import DEFAULT_BLOCKS
from micromaser.states import build_block_state

from conftest import random_density, random_state


def dense_ops(dim):
    a = fock.annihilation(dim)
    ad = a.conj().T
    return {
        "E": 1j * (ad - a),
        "Y1": 0.5 * (a @ a + ad @ ad),
        "Y2": 0.5j * (ad @ ad - a @ a),
        "N": ad @ a,
    }


def dense_expect(rho, op):
    return np.trace(rho @ op)


def test_ladder_operators():
    a = fock.annihilation(6)
    ad = fock.creation(6)
    assert np.allclose(ad @ fock.basis(6, 2), math.sqrt(3) * fock.basis(6, 3))
    assert np.allclose(a @ fock.basis(6, 2), math.sqrt(2) * fock.basis(6, 1))
    assert np.allclose(ad @ a, fock.number(6))


def test_pure_to_density_vacuum():
    rho = fock.pure_to_density(fock.basis(4, 0))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.array_equal(rho, expected)


def test_pure_to_density_two_level():
    rho = fock.pure_to_density(np.array([1, 1]) / math.sqrt(2))
    assert np.allclose(rho, 0.5)


def test_pure_to_density_matches_double_loop():
    atom = AtomState(0.9, math.sqrt(0.19))
    d = build_block_state(DEFAULT_BLOCKS[1], atom, math.pi)
    rho = fock.pure_to_density(d)
    loop = np.empty((d.size, d.size), dtype=complex)
    for m in range(d.size):
        for n in range(d.size):
            loop[m, n] = d[m] * np.conj(d[n])
    assert np.max(np.abs(rho - loop)) == 0.0
    fock.validate_density(rho)
    assert np.linalg.matrix_rank(rho) == 1


def test_pure_to_density_rejects_empty():
    with pytest.raises(InvalidInputError):
        fock.pure_to_density(np.zeros(0))


def test_field_vacuum_is_zero():
    assert fock.electric_field_expectation(fock.pure_to_density(fock.basis(5, 0))) == 0.0


def test_field_hand_evaluated():
    # d = (1, i)/sqrt2: rho_10 = d_1 conj(d_0) = i/2, <E> = 2 sqrt(1) Im(i/2) = 1
    rho = fock.pure_to_density(np.array([1, 1j]) / math.sqrt(2))
    assert rho[1, 0] == pytest.approx(0.5j)
    assert fock.electric_field_expectation(rho) == pytest.approx(1.0, abs=1e-15)
    assert fock.electric_field_expectation(rho, prefactor=2.5) == pytest.approx(2.5, abs=1e-15)


def test_field_real_symmetric_is_zero(rng):
    x = rng.normal(size=(6, 6))
    rho = x @ x.T
    rho /= np.trace(rho)
    assert fock.electric_field_expectation(rho.astype(complex)) == 0.0


def test_field_rejects_non_hermitian():
    rho = np.array([[0.5, 0.3], [0.0, 0.5]], dtype=complex)
    with pytest.raises(IntegrityError):
        fock.electric_field_expectation(rho)


def test_field_rejects_bad_prefactor():
    with pytest.raises(InvalidInputError):
        fock.electric_field_expectation(np.eye(2) / 2, prefactor=0.0)


def test_quadratures_vacuum_and_diagonal():
    assert fock.quadrature_squared_expectations(fock.pure_to_density(fock.basis(5, 0))) == (0.0, 0.0)
    p = np.exp(-np.arange(8) / 2.0)
    rho = np.diag(p / p.sum()).astype(complex)
    assert fock.quadrature_squared_expectations(rho) == (0.0, 0.0)


def test_quadratures_match_dense_trace():
    rho = fock.pure_to_density(np.array([1, 0, 1]) / math.sqrt(2))
    ops = dense_ops(3)
    y1, y2 = fock.quadrature_squared_expectations(rho)
    assert y1 == pytest.approx(dense_expect(rho, ops["Y1"]).real, abs=1e-14)
    assert y2 == pytest.approx(dense_expect(rho, ops["Y2"]).real, abs=1e-14)
    assert y1 == pytest.approx(math.sqrt(2) / 2)
    assert y2 == 0.0


def test_quadrature_y2_sign():
    # (|0> + i|2>)/sqrt2: rho_20 = i/2, so Y2 = sqrt2 * Im(rho_20) = sqrt2/2
    rho = fock.pure_to_density(np.array([1, 0, 1j]) / math.sqrt(2))
    ops = dense_ops(3)
    y1, y2 = fock.quadrature_squared_expectations(rho)
    assert y2 == pytest.approx(dense_expect(rho, ops["Y2"]).real, abs=1e-14)
    assert y2 == pytest.approx(math.sqrt(2) / 2)


def test_photon_distribution():
    rho = fock.pure_to_density(fock.basis(4, 0))
    assert np.array_equal(fock.photon_distribution(rho), [1, 0, 0, 0])
    assert fock.mean_photon_number(rho) == 0
    v = np.zeros(6)
    v[[1, 4]] = 1 / math.sqrt(2)
    rho = fock.pure_to_density(v)
    assert np.allclose(fock.photon_distribution(rho)[[1, 4]], 0.5)
    assert fock.mean_photon_number(rho) == pytest.approx(2.5)


@settings(max_examples=50, deadline=None)
@given(dim=st.integers(3, 20), seed=st.integers(0, 2**32 - 1))
def test_observables_agree_with_dense_oracle(dim, seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, dim)
    ops = dense_ops(dim)
    y1, y2 = fock.quadrature_squared_expectations(rho)
    assert abs(fock.electric_field_expectation(rho) - dense_expect(rho, ops["E"])) <= 1e-10
    assert abs(y1 - dense_expect(rho, ops["Y1"])) <= 1e-10
    assert abs(y2 - dense_expect(rho, ops["Y2"])) <= 1e-10
    assert abs(fock.mean_photon_number(rho) - dense_expect(rho, ops["N"])) <= 1e-10
    assert abs(fock.purity(rho) - dense_expect(rho, rho)) <= 1e-10


@settings(max_examples=50, deadline=None)
@given(dim=st.integers(1, 40), seed=st.integers(0, 2**32 - 1))
def test_pure_state_trace_is_one(dim, seed):
    d = random_state(np.random.default_rng(seed), dim)
    rho = fock.pure_to_density(d)
    assert abs(np.trace(rho) - 1) <= 1e-12
    assert fock.hermiticity_defect(rho) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(dim=st.integers(2, 20), seed=st.integers(0, 2**32 - 1))
def test_diagonal_states_have_zero_field(dim, seed):
    p = np.random.default_rng(seed).random(dim)
    rho = np.diag(p / p.sum()).astype(complex)
    assert fock.electric_field_expectation(rho) == 0.0


def test_validate_density_catches_defects():
    good = np.eye(3, dtype=complex) / 3
    fock.validate_density(good)
    with pytest.raises(IntegrityError):
        fock.validate_density(good * 1.01)
    bad = good.copy()
    bad[0, 1] = 1e-6
    with pytest.raises(IntegrityError):
        fock.validate_density(bad)
    neg = np.diag([1.1, -0.1, 0.0]).astype(complex)
    with pytest.raises(IntegrityError):
        fock.validate_density(neg)
    nan = good.copy()
    nan[1, 1] = np.nan
    with pytest.raises(IntegrityError):
        fock.validate_density(nan)


def test_off_diagonal_mass_ratio():
    assert fock.off_diagonal_mass_ratio(np.eye(3) / 3) == 0.0
    assert fock.off_diagonal_mass_ratio(np.full((2, 2), 0.5)) == pytest.approx(0.5)

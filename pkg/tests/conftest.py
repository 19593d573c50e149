import math

import numpy as np
import pytest

from micromaser.jaynes_cummings import AtomState


def random_density(rng, dim, rank=None):
    """Random positive unit-trace matrix (Wishart with ``rank`` columns)."""
    rank = rank or dim
    x = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)


@pytest.fixture
def experiment_atom():
    return AtomState(0.9, math.sqrt(0.19))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)

import numpy as np
import pytest

from eitlambda.master_equation import LindbladChannel


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_density_matrix(rng, n=3, rank=None):
    rank = rank or n
    a = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_channels(rng, count, n=8):
    return [LindbladChannel(f"r{i}", rng.normal(size=n) + 1j * rng.normal(size=n)) for i in range(count)]

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eitlambda.errors import DimensionError
from eitlambda.master_equation import (
    EvolutionModel,
    LindbladChannel,
    assemble,
    c_matrices,
    channel_generators,
    hamiltonian_generator,
    liouvillian_direct,
    model_from_superoperator,
    rhs,
    vector_form_rhs,
)
from eitlambda.su_algebra import operator_from_vector, su, to_coherence, vector_from_operator

from conftest import random_channels, random_density_matrix


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_assemble_matches_superoperator(N, rng):
    basis, sc = su(N)
    n = N * N - 1
    for _ in range(5):
        omega = rng.normal(size=n)
        chans = random_channels(rng, 3, n)
        a = assemble(omega, chans, sc)
        o = model_from_superoperator(operator_from_vector(omega, basis), chans, basis)
        assert np.abs(a.m - o.m).max() < 1e-12
        assert np.abs(a.b - o.b).max() < 1e-12


@given(st.integers(0, 2**31))
@settings(max_examples=40, deadline=None)
def test_vector_form_matches_liouvillian(seed):
    rng = np.random.default_rng(seed)
    basis, sc = su(3)
    omega = rng.normal(size=8)
    chans = random_channels(rng, int(rng.integers(0, 4)))
    rho = random_density_matrix(rng)
    x = to_coherence(rho, basis)
    direct = vector_from_operator(liouvillian_direct(rho, operator_from_vector(omega, basis), chans, basis), basis)
    assert np.abs(direct.imag).max() < 1e-12
    assert np.abs(vector_form_rhs(x, omega, chans, sc) - direct.real).max() < 1e-10
    assert np.abs(rhs(x, assemble(omega, chans, sc)) - direct.real).max() < 1e-10


def test_liouvillian_preserves_trace_and_hermiticity(rng):
    basis = su(3)[0]
    rho = random_density_matrix(rng)
    out = liouvillian_direct(rho, np.diag([0.3, -0.1, 0.5]), random_channels(rng, 2), basis)
    assert abs(np.trace(out)) < 1e-12
    assert np.abs(out - out.conj().T).max() < 1e-12


def test_c_matrices_symmetry(rng):
    ch = random_channels(rng, 1)[0]
    c = c_matrices(ch)
    assert np.allclose(c.c_plus, c.c_plus.T)
    assert np.allclose(c.c_minus, -c.c_minus.T)
    assert np.abs(c.c_minus.real).max() == 0


def test_hamiltonian_generator_is_antisymmetric(rng):
    m0 = hamiltonian_generator(rng.normal(size=8), su(3)[1])
    assert np.allclose(m0, -m0.T)


def test_hermitian_channel_has_no_drive(rng):
    g = rng.normal(size=8).astype(complex)
    _, gm, bk = channel_generators(LindbladChannel("h", g), su(3)[1])
    assert np.abs(gm).max() < 1e-14
    assert np.abs(bk).max() < 1e-14


def test_pure_hamiltonian_is_rotation(rng):
    model = assemble(rng.normal(size=8), [], su(3)[1])
    assert np.allclose(model.m, -model.m.T)
    assert np.all(model.b == 0)


def test_evolution_model_is_read_only():
    m = EvolutionModel(np.zeros((8, 8)), np.zeros(8))
    with pytest.raises(ValueError):
        m.m[0, 0] = 1.0
    with pytest.raises(DimensionError):
        EvolutionModel(np.zeros((8, 8)), np.zeros(7))


def test_channel_validation():
    with pytest.raises(DimensionError):
        LindbladChannel("bad", np.zeros((2, 2)))
    with pytest.raises(ValueError):
        LindbladChannel("nan", np.array([np.nan, 0]))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from eitlambda.errors import DimensionError, InvalidDimensionError, InvalidOperatorError, InvalidStateError
from eitlambda.su_algebra import (
    build_basis,
    decompose_hamiltonian,
    from_coherence,
    star,
    structure_constants,
    su,
    to_coherence,
    wedge,
)

from conftest import random_density_matrix

finite = st.floats(-10, 10, allow_nan=False)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_generators_hermitian_traceless_orthogonal(N):
    lam = build_basis(N).generators
    assert lam.shape == (N * N - 1, N, N)
    assert np.allclose(lam, lam.conj().transpose(0, 2, 1), atol=0)
    assert np.abs(np.trace(lam, axis1=1, axis2=2)).max() < 1e-14
    gram = np.einsum("rij,sji->rs", lam, lam)
    assert np.abs(gram - 2 * np.eye(N * N - 1)).max() < 1e-12


def test_su3_matches_gell_mann_matrices():
    lam = su(3)[0].generators
    assert np.allclose(lam[2], np.diag([1, -1, 0]))
    assert np.allclose(lam[7], np.diag([1, 1, -2]) / np.sqrt(3))
    assert lam[1][0, 1] == -1j


@pytest.mark.parametrize("N", [2, 3, 4])
def test_product_reconstruction(N):
    basis, sc = su(N)
    lam = basis.generators
    prod = np.einsum("rij,sjk->rsik", lam, lam)
    rebuilt = (2 / N) * np.einsum("rs,ik->rsik", np.eye(N * N - 1), np.eye(N)) + np.einsum(
        "rst,tik->rsik", sc.d + 1j * sc.f, lam
    )
    assert np.abs(prod - rebuilt).max() < 1e-12


@pytest.mark.parametrize("N", [2, 3, 4])
def test_total_symmetry(N):
    sc = su(N)[1]
    f, d = sc.f, sc.d
    for perm, sign in (((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 2, 0), 1)):
        assert np.abs(f - sign * f.transpose(perm)).max() < 1e-12
        assert np.abs(d - d.transpose(perm)).max() < 1e-12


def test_su2_structure_constants_are_levi_civita():
    f = su(2)[1].f
    assert f[0, 1, 2] == pytest.approx(1.0)
    assert np.abs(su(2)[1].d).max() == 0


def test_known_su3_values():
    f, d = su(3)[1].f, su(3)[1].d
    assert f[0, 1, 2] == pytest.approx(1.0)
    assert f[3, 4, 7] == pytest.approx(np.sqrt(3) / 2)
    assert d[0, 0, 7] == pytest.approx(1 / np.sqrt(3))
    assert d[7, 7, 7] == pytest.approx(-1 / np.sqrt(3))


def test_structure_constants_reject_non_hermitian_basis():
    basis = build_basis(2)
    bad = type(basis)(dim=2, generators=basis.generators * 1j)
    with pytest.raises(InvalidOperatorError):
        structure_constants(bad)


@pytest.mark.parametrize("N", [1, 0, 2.5])
def test_invalid_dimension(N):
    with pytest.raises(InvalidDimensionError):
        build_basis(N)


@given(arrays(float, 8, elements=finite), arrays(float, 8, elements=finite))
@settings(max_examples=50, deadline=None)
def test_wedge_antisymmetric_star_symmetric(a, b):
    sc = su(3)[1]
    assert np.allclose(wedge(a, b, sc), -wedge(b, a, sc), atol=1e-9)
    assert np.allclose(star(a, b, sc), star(b, a, sc), atol=1e-9)
    assert np.allclose(wedge(a, a, sc), 0, atol=1e-9)


def test_wedge_shape_check():
    with pytest.raises(DimensionError):
        wedge(np.ones(3), np.ones(8), su(3)[1])


@given(st.integers(0, 2**31))
@settings(max_examples=30, deadline=None)
def test_coherence_round_trip(seed):
    rng = np.random.default_rng(seed)
    basis = su(3)[0]
    rho = random_density_matrix(rng, rank=int(rng.integers(1, 4)))
    x = to_coherence(rho, basis)
    assert np.abs(from_coherence(x, basis) - rho).max() < 1e-12
    # purity bound 1/3 + |x|^2 * 2 <= 1
    assert x @ x <= 1 / 3 + 1e-12


def test_pure_state_saturates_bound():
    basis = su(3)[0]
    x = to_coherence(np.diag([1.0, 0, 0]), basis)
    assert x @ x == pytest.approx(1 / 3)


@pytest.mark.parametrize(
    "rho",
    [np.diag([0.5, 0.5, 0.5]), np.array([[0.5, 1j, 0], [1j, 0.5, 0], [0, 0, 0]])],
)
def test_to_coherence_rejects_invalid_states(rho):
    with pytest.raises(InvalidStateError):
        to_coherence(rho, su(3)[0])


def test_decompose_hamiltonian_round_trip(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    H = a + a.conj().T
    dec = decompose_hamiltonian(H)
    basis = su(3)[0]
    rebuilt = dec.omega0 * np.eye(3) + np.einsum("i,ijk->jk", dec.omega, basis.generators)
    assert np.abs(rebuilt - H).max() < 1e-12
    with pytest.raises(InvalidOperatorError):
        decompose_hamiltonian(a)

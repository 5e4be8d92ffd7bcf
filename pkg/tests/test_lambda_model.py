import numpy as np
import pytest

from eitlambda.errors import DegenerateInputError, InvalidRateError
from eitlambda.lambda_model import (
    ChannelRates,
    LambdaParams,
    analytic_blocks,
    block_discrepancy,
    dark_state,
    decay_channels,
    evolution_model,
    hamiltonian_decomposition,
    hamiltonian_matrix,
    oracle_model,
    standard_channels,
    transform_T,
)
from eitlambda.su_algebra import decompose_hamiltonian, su, to_coherence

RATES = [
    ChannelRates(),
    ChannelRates(eta_z=0.1),
    ChannelRates(eta_depol=0.2),
    ChannelRates(eta_bc=0.1, eta_cb=0.1),
    ChannelRates(eta_z=0.05, eta_depol=0.1, eta_bc=0.07, eta_cb=0.07),
]


def random_params(rng):
    return LambdaParams(
        delta_b=rng.normal(),
        delta_c=rng.normal(),
        omega_b=0.1 * rng.uniform() * np.exp(2j * np.pi * rng.uniform()),
        omega_c=0.5 * np.exp(2j * np.pi * rng.uniform()),
    )


def test_detuning_conventions():
    p = LambdaParams.from_detunings(delta=0.2, Delta=0.5, gamma=2.0, branching=0.25)
    assert (p.delta_b, p.delta_c) == pytest.approx((0.7, 0.3))
    assert (p.delta, p.Delta, p.gamma) == pytest.approx((0.2, 0.5, 2.0))
    assert (p.gamma_b, p.gamma_c) == pytest.approx((0.5, 1.5))


def test_hamiltonian_decomposition_matches_matrix(rng):
    for _ in range(5):
        p = random_params(rng)
        dec = decompose_hamiltonian(hamiltonian_matrix(p))
        ours = hamiltonian_decomposition(p)
        assert dec.omega0 == pytest.approx(ours.omega0)
        assert np.abs(dec.omega - ours.omega).max() < 1e-14


@pytest.mark.parametrize("r", RATES)
def test_assembled_matches_oracle(r, rng):
    p = random_params(rng)
    a, o = evolution_model(p, r), oracle_model(p, r)
    assert np.abs(a.m - o.m).max() < 1e-13
    assert np.abs(a.b - o.b).max() < 1e-13


@pytest.mark.parametrize("r", RATES)
def test_closed_form_blocks(r, rng):
    for _ in range(3):
        diff = block_discrepancy(random_params(rng), r)
        for key, block in diff.items():
            assert np.abs(block).max() < 1e-10, key


def test_damping_coupling_is_twice_tabulated():
    p = LambdaParams(omega_b=0.01, omega_c=0.3)
    r = ChannelRates(eta_bc=0.2, eta_cb=0.05)
    T = transform_T()
    m = T @ oracle_model(p, r).m @ T.T
    assert m[2, 3] == pytest.approx(2 * analytic_blocks(p, r)[0][2, 3])


def test_excited_population_decays_at_twice_linewidth():
    p = LambdaParams(gamma_b=0.3, gamma_c=0.2)
    basis = su(3)[0]
    model = evolution_model(p, ChannelRates())
    x = to_coherence(np.diag([0, 0, 1.0]), basis)
    drho = np.einsum("i,ijk->jk", model.m @ x + model.b, basis.generators).diagonal().real
    assert drho == pytest.approx([2 * p.gamma_b, 2 * p.gamma_c, -2 * p.gamma])


def test_decay_channels_carry_bare_rates():
    chans = decay_channels(0.4, 0.9)
    L = [ch.operator(su(3)[0]) for ch in chans]
    assert L[0][0, 2] == pytest.approx(np.sqrt(0.4))
    assert L[1][1, 2] == pytest.approx(np.sqrt(0.9))
    assert np.count_nonzero(L[0]) == np.count_nonzero(L[1]) == 1


def test_amplitude_damping_operators():
    basis = su(3)[0]
    p = LambdaParams()
    chans = {c.label: c.operator(basis) for c in standard_channels(p, ChannelRates(eta_bc=0.36, eta_cb=0.16))}
    assert chans["bc"][0, 1] == pytest.approx(0.6)  # |b><c|
    assert chans["cb"][1, 0] == pytest.approx(0.4)  # |c><b|


def test_zero_rate_channels_are_dropped():
    labels = [c.label for c in standard_channels(LambdaParams(), ChannelRates(eta_z=0.1))]
    assert labels == ["decay_b", "decay_c", "z"]


def test_depolarization_splits_over_axes():
    basis = su(3)[0]
    chans = {c.label: c.operator(basis) for c in standard_channels(LambdaParams(), ChannelRates(eta_depol=0.3))}
    for label in "xyz":
        assert np.linalg.norm(chans[label], 2) == pytest.approx(np.sqrt(0.1))


def test_dark_state_is_dark(rng):
    for _ in range(10):
        p = random_params(rng)
        d = dark_state(p.omega_b, p.omega_c)
        assert np.linalg.norm(d) == pytest.approx(1.0)
        assert abs((hamiltonian_matrix(p) @ d)[2]) < 1e-14


def test_conjugated_dark_state_leaks_for_complex_phases():
    p = LambdaParams(omega_b=0.3 * np.exp(0.7j), omega_c=0.5 * np.exp(-0.4j))
    assert abs((hamiltonian_matrix(p) @ dark_state(p.omega_b, p.omega_c, conjugate=True))[2]) > 0.1
    q = LambdaParams(omega_b=0.3, omega_c=0.5)
    assert abs((hamiltonian_matrix(q) @ dark_state(0.3, 0.5, conjugate=True))[2]) < 1e-15


def test_dark_state_degenerate():
    with pytest.raises(DegenerateInputError):
        dark_state(0, 0)


def test_transform_is_permutation():
    T = transform_T()
    assert np.array_equal(T @ T.T, np.eye(8))
    assert T[3, 7] == 1 and T[4, 3] == 1


def test_rate_validation():
    with pytest.raises(InvalidRateError):
        ChannelRates(eta_z=-0.1)
    with pytest.raises(InvalidRateError):
        LambdaParams(gamma_b=0, gamma_c=0)
    with pytest.raises(InvalidRateError):
        analytic_blocks(LambdaParams(), ChannelRates(eta_x=0.1))

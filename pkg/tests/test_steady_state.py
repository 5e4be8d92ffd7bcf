import numpy as np
import pytest

from eitlambda.errors import SingularEvolutionError
from eitlambda.lambda_model import ChannelRates, LambdaParams, evolution_model
from eitlambda.master_equation import EvolutionModel, assemble
from eitlambda.response import probe_params
from eitlambda.steady_state import asymptotic, evolve, spectrum, trajectory
from eitlambda.su_algebra import from_coherence, su, to_coherence

from conftest import random_density_matrix


@pytest.fixture
def model():
    return evolution_model(probe_params(delta=0.05, omega_c=0.16), ChannelRates(eta_z=0.1))


def test_spectrum_of_driven_model(model):
    rep = spectrum(model)
    assert rep.zero_modes == 0
    assert rep.max_real_part < 0
    assert rep.diagonalizable
    assert np.all(np.diff(rep.eigenvalues.real) <= 1e-15)


def test_asymptotic_is_fixed_point(model):
    x = asymptotic(model)
    assert np.abs(model.m @ x + model.b).max() < 1e-12


def test_evolve_converges(rng):
    # ground-population exchange keeps the slowest mode away from the probe pumping rate
    model = evolution_model(probe_params(delta=0.05), ChannelRates(eta_z=0.1, eta_bc=0.1, eta_cb=0.1))
    x_inf = asymptotic(model)
    x0 = to_coherence(random_density_matrix(rng), su(3)[0])
    assert np.abs(evolve(x0, model, 200.0) - x_inf).max() < 1e-6


def test_dephasing_alone_relaxes_slowly(model):
    # with only dephasing the slowest mode is far below the line width
    assert -0.05 < spectrum(model).max_real_part < 0


def test_evolve_matches_matrix_exponential(model, rng):
    from scipy.linalg import expm

    x0 = to_coherence(random_density_matrix(rng), su(3)[0])
    x_inf = asymptotic(model)
    exact = x_inf + expm(model.m * 3.0) @ (x0 - x_inf)
    assert np.abs(evolve(x0, model, 3.0) - exact).max() < 1e-9


def test_trajectory_stays_physical(model, rng):
    x0 = to_coherence(random_density_matrix(rng, rank=1), su(3)[0])
    xs = trajectory(x0, model, np.linspace(0, 20, 11))
    assert xs.shape == (11, 8)
    assert np.allclose(xs[0], x0)
    for x in xs:
        assert np.linalg.eigvalsh(from_coherence(x, su(3)[0])).min() > -1e-8


def test_evolve_zero_time_and_validation(model):
    x0 = np.zeros(8)
    assert np.array_equal(evolve(x0, model, 0.0), x0)
    with pytest.raises(ValueError):
        evolve(x0, model, -1.0)


def test_undriven_ground_states_are_singular():
    # no fields: any ground-state mixture is stationary
    with pytest.raises(SingularEvolutionError):
        asymptotic(evolution_model(LambdaParams(), ChannelRates()))


def test_conservative_rotation_has_zero_modes(rng):
    rep = spectrum(assemble(rng.normal(size=8), [], su(3)[1]))
    assert rep.zero_modes >= 2
    assert abs(rep.max_real_part) < 1e-12


def test_defective_matrix_flagged():
    m = EvolutionModel(np.array([[-1.0, 1.0], [0.0, -1.0]]), np.zeros(2))
    assert not spectrum(m).diagonalizable

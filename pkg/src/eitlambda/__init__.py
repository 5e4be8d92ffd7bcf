"""
Coherence-vector Lindblad dynamics of a three-level Lambda system and its
electromagnetically induced transparency response.

    >>> from eitlambda import probe_params, rates_for_kind, susceptibility_numeric
    >>> p = probe_params(delta=0.0, omega_c=0.16)
    >>> chi = susceptibility_numeric(p, rates_for_kind("dephase", 0.1))
    >>> round(chi.imag, 4)
    0.8489
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .su_algebra import (  # noqa: F401
    GellMannBasis,
    HamiltonianDecomposition,
    StructureConstants,
    build_basis,
    decompose_hamiltonian,
    from_coherence,
    star,
    structure_constants,
    su,
    to_coherence,
    wedge,
)
from .master_equation import (  # noqa: F401
    CMatrices,
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
from .lambda_model import (  # noqa: F401
    ChannelRates,
    DerivedParams,
    LambdaParams,
    analytic_blocks,
    block_discrepancy,
    dark_state,
    decay_channels,
    derived_params,
    evolution_model,
    hamiltonian_matrix,
    omega_vector,
    oracle_model,
    standard_channels,
    transform_T,
)
from .steady_state import SpectrumReport, asymptotic, evolve, spectrum, trajectory  # noqa: F401
from .response import (  # noqa: F401
    ChannelKind,
    OpticalResponse,
    absorption,
    chi_closed_form,
    dispersion_slope,
    group_index,
    normalized_rates,
    optical_response,
    probe_params,
    rates_for_kind,
    susceptibility,
    susceptibility_numeric,
)

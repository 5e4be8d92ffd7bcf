"""
Three-level Lambda system: Hamiltonian, Lindblad channels, dark state and the
closed-form block structure of the evolution matrix.

Basis ordering is ``(|b>, |c>, |a>)`` with ``|a>`` the excited state. Rates and
detunings are in units of the line width ``gamma = gamma_b + gamma_c``.

Line-width convention
---------------------
``gamma`` is the damping rate of the optical coherences ``rho_ab``, ``rho_ac``;
the excited-state population decays at ``2 * gamma``. The decay jump operators
are therefore ``sqrt(2 gamma_b) |b><a|`` and ``sqrt(2 gamma_c) |c><a|``. With
this choice the evolution matrix reproduces the closed-form blocks below and
every closed-form susceptibility in :mod:`eitlambda.response`. Use
:func:`decay_channels` to build decay vectors from bare Lindblad rates.

Depolarization is parametrized by its total rate ``eta_depol``; each of the
three Pauli-like axes of the ground-state qubit gets ``eta_depol / 3``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateInputError, InvalidRateError
from .master_equation import EvolutionModel, LindbladChannel, assemble, model_from_superoperator
from .su_algebra import HamiltonianDecomposition, su

__all__ = [
    "LambdaParams",
    "ChannelRates",
    "DerivedParams",
    "hamiltonian_matrix",
    "omega_vector",
    "hamiltonian_decomposition",
    "decay_channels",
    "standard_channels",
    "evolution_model",
    "oracle_model",
    "dark_state",
    "transform_T",
    "analytic_blocks",
    "derived_params",
    "block_discrepancy",
]

B, C, A = 0, 1, 2  # basis positions of |b>, |c>, |a>
SQRT3 = np.sqrt(3.0)


def _e(i: int, n: int = 8) -> np.ndarray:
    """Unit vector e_i with 1-based index, as in the generator labels."""
    v = np.zeros(n, dtype=complex)
    v[i - 1] = 1.0
    return v


@dataclass(frozen=True)
class LambdaParams:
    delta_b: float = 0.0
    delta_c: float = 0.0
    omega_b: complex = 0.0
    omega_c: complex = 0.0
    gamma_b: float = 0.5
    gamma_c: float = 0.5

    def __post_init__(self):
        if self.gamma_b < 0 or self.gamma_c < 0:
            raise InvalidRateError("decay rates must be nonnegative")
        if not self.gamma_b + self.gamma_c > 0:
            raise InvalidRateError("line width gamma_b + gamma_c must be positive")

    @classmethod
    def from_detunings(cls, delta=0.0, Delta=0.0, omega_b=0.0, omega_c=0.0, gamma=1.0, branching=0.5):
        """Build from two-photon detuning ``delta`` and mean detuning ``Delta``.

        ``branching`` is the fraction ``gamma_b / gamma``.
        """
        return cls(
            delta_b=Delta + delta,
            delta_c=Delta - delta,
            omega_b=omega_b,
            omega_c=omega_c,
            gamma_b=gamma * branching,
            gamma_c=gamma * (1 - branching),
        )

    @property
    def gamma(self) -> float:
        return self.gamma_b + self.gamma_c

    @property
    def delta(self) -> float:
        return (self.delta_b - self.delta_c) / 2

    @property
    def Delta(self) -> float:
        return (self.delta_b + self.delta_c) / 2

    def replace(self, **kw) -> "LambdaParams":
        return replace(self, **kw)


@dataclass(frozen=True)
class ChannelRates:
    eta_x: float = 0.0
    eta_y: float = 0.0
    eta_z: float = 0.0
    eta_depol: float = 0.0
    eta_bc: float = 0.0
    eta_cb: float = 0.0

    def __post_init__(self):
        for name in ("eta_x", "eta_y", "eta_z", "eta_depol", "eta_bc", "eta_cb"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise InvalidRateError(f"{name} must be finite and nonnegative, got {v!r}")

    def is_zero(self) -> bool:
        return not any((self.eta_x, self.eta_y, self.eta_z, self.eta_depol, self.eta_bc, self.eta_cb))


@dataclass(frozen=True)
class DerivedParams:
    delta: float
    Delta: float
    eta_minus: float
    eta_plus: float
    Gamma: complex
    Gamma_b: complex
    Gamma_c: complex


def hamiltonian_matrix(p: LambdaParams) -> np.ndarray:
    """Rotating-frame Hamiltonian in the ``(b, c, a)`` basis."""
    H = np.zeros((3, 3), dtype=complex)
    H[B, B] = p.delta_b
    H[C, C] = p.delta_c
    H[A, B] = -p.omega_b
    H[A, C] = -p.omega_c
    H[B, A] = -np.conj(p.omega_b)
    H[C, A] = -np.conj(p.omega_c)
    return H


def omega_vector(p: LambdaParams) -> np.ndarray:
    ob, oc = complex(p.omega_b), complex(p.omega_c)
    return np.array(
        [0.0, 0.0, p.delta, -ob.real, -ob.imag, -oc.real, -oc.imag, p.Delta / SQRT3]
    )


def hamiltonian_decomposition(p: LambdaParams) -> HamiltonianDecomposition:
    return HamiltonianDecomposition(omega0=2 * p.Delta / 3, omega=omega_vector(p))


def decay_channels(rate_b: float, rate_c: float) -> list[LindbladChannel]:
    """Spontaneous emission ``sqrt(rate_b)|b><a|`` and ``sqrt(rate_c)|c><a|``."""
    if rate_b < 0 or rate_c < 0:
        raise InvalidRateError("decay rates must be nonnegative")
    return [
        LindbladChannel("decay_b", 0.5 * np.sqrt(rate_b) * (_e(4) + 1j * _e(5))),
        LindbladChannel("decay_c", 0.5 * np.sqrt(rate_c) * (_e(6) + 1j * _e(7))),
    ]


def standard_channels(p: LambdaParams, r: ChannelRates) -> list[LindbladChannel]:
    """Decay channels plus whichever ground-state channels have nonzero rate."""
    if not isinstance(r, ChannelRates):
        raise TypeError("rates must be a ChannelRates instance")
    channels = decay_channels(2 * p.gamma_b, 2 * p.gamma_c)
    iso = r.eta_depol / 3
    for label, axis, rate in (("x", 1, r.eta_x + iso), ("y", 2, r.eta_y + iso), ("z", 3, r.eta_z + iso)):
        if rate > 0:
            channels.append(LindbladChannel(label, np.sqrt(rate) * _e(axis)))
    if r.eta_bc > 0:
        channels.append(LindbladChannel("bc", 0.5 * np.sqrt(r.eta_bc) * (_e(1) + 1j * _e(2))))
    if r.eta_cb > 0:
        channels.append(LindbladChannel("cb", 0.5 * np.sqrt(r.eta_cb) * (_e(1) - 1j * _e(2))))
    return channels


def evolution_model(p: LambdaParams, r: ChannelRates) -> EvolutionModel:
    return assemble(omega_vector(p), standard_channels(p, r), su(3)[1])


def oracle_model(p: LambdaParams, r: ChannelRates) -> EvolutionModel:
    """Same model read off the density-matrix Liouvillian."""
    return model_from_superoperator(hamiltonian_matrix(p), standard_channels(p, r), su(3)[0])


def dark_state(omega_b: complex, omega_c: complex, conjugate: bool = False) -> np.ndarray:
    """Normalized ground-state superposition decoupled from ``|a>``.

    The default ``Omega_c|b> - Omega_b|c>`` has ``<a|H|d> = 0`` for any field
    phases. ``conjugate=True`` gives ``Omega_c*|b> - Omega_b*|c>``, which only
    decouples when ``Omega_b Omega_c*`` is real.
    """
    ob, oc = complex(omega_b), complex(omega_c)
    norm = np.hypot(abs(ob), abs(oc))
    if norm == 0:
        raise DegenerateInputError("dark state undefined when both Rabi frequencies vanish")
    if conjugate:
        ob, oc = ob.conjugate(), oc.conjugate()
    d = np.zeros(3, dtype=complex)
    d[B] = oc / norm
    d[C] = -ob / norm
    return d


def transform_T() -> np.ndarray:
    """Permutation moving e4..e7 one slot down and e8 into slot 4."""
    T = np.zeros((8, 8))
    for src, dst in ((1, 1), (2, 2), (3, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4)):
        T[dst - 1, src - 1] = 1.0
    return T


def derived_params(p: LambdaParams, r: ChannelRates) -> DerivedParams:
    eta = r.eta_depol / 3  # per-axis depolarization rate
    g = p.gamma
    return DerivedParams(
        delta=p.delta,
        Delta=p.Delta,
        eta_minus=(r.eta_bc - r.eta_cb) / 2,
        eta_plus=r.eta_bc + r.eta_cb + 4 * eta,
        Gamma=2j * p.delta + (r.eta_bc + r.eta_cb) / 2 + 4 * eta + 2 * r.eta_z,
        Gamma_b=1j * p.delta_b + g + (3 * eta + r.eta_cb + r.eta_z) / 2,
        Gamma_c=1j * p.delta_c + g + (3 * eta + r.eta_bc + r.eta_z) / 2,
    )


def analytic_blocks(p: LambdaParams, r: ChannelRates):
    """Closed-form ``(A, B, C, b')`` of ``M' = T M T^-1 = [[A, C], [-C^T, B]]``.

    Entries are transcribed as tabulated, including the ``eta_minus/sqrt(3)``
    coupling in ``A``; :func:`block_discrepancy` measures them against the
    assembled model. Only z-dephasing and isotropic depolarization are covered,
    so ``eta_x`` and ``eta_y`` must be zero.
    """
    if r.eta_x or r.eta_y:
        raise InvalidRateError("closed-form blocks need eta_x = eta_y = 0 (use eta_z / eta_depol)")
    dp = derived_params(p, r)
    g = p.gamma
    G, Gb, Gc = dp.Gamma, dp.Gamma_b, dp.Gamma_c
    A_blk = np.array(
        [
            [-G.real, -G.imag, 0, 0],
            [G.imag, -G.real, 0, 0],
            [0, 0, -dp.eta_plus, dp.eta_minus / SQRT3],
            [0, 0, 0, -2 * g],
        ]
    )
    B_blk = np.array(
        [
            [-Gb.real, -Gb.imag, 0, 0],
            [Gb.imag, -Gb.real, 0, 0],
            [0, 0, -Gc.real, -Gc.imag],
            [0, 0, Gc.imag, -Gc.real],
        ]
    )
    ab, pb = abs(p.omega_b), np.angle(p.omega_b)
    ac, pc = abs(p.omega_c), np.angle(p.omega_c)
    sb, cb = ab * np.sin(pb), ab * np.cos(pb)
    sc, cc = ac * np.sin(pc), ac * np.cos(pc)
    C_blk = np.array(
        [
            [sc, -cc, sb, -cb],
            [cc, sc, -cb, -sb],
            [sb, -cb, -sc, cc],
            [SQRT3 * sb, -SQRT3 * cb, SQRT3 * sc, -SQRT3 * cc],
        ]
    )
    b_prime = np.zeros(8)
    b_prime[2] = 2 * dp.eta_minus / 3
    b_prime[3] = g / SQRT3
    return A_blk, B_blk, C_blk, b_prime


def block_discrepancy(p: LambdaParams, r: ChannelRates, model: EvolutionModel | None = None) -> dict:
    """Transformed model minus the closed-form blocks, block by block."""
    if model is None:
        model = oracle_model(p, r)
    T = transform_T()
    Mp = T @ model.m @ T.T
    bp = T @ model.b
    A_blk, B_blk, C_blk, b_prime = analytic_blocks(p, r)
    return {
        "A": Mp[:4, :4] - A_blk,
        "B": Mp[4:, 4:] - B_blk,
        "C": Mp[:4, 4:] - C_blk,
        "-C^T": Mp[4:, :4] + C_blk.T,
        "b'": bp - b_prime,
    }

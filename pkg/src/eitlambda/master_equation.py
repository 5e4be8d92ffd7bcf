"""
Coherence-vector form of the Lindblad master equation.

The dynamics of the coherence vector is affine, ``dx/dt = M x + b``, with

    M = M0 + sum_k (G+_k + G-_k),        b = sum_k b_k,

where ``M0`` is the Hamiltonian rotation and ``G+_k``, ``G-_k``, ``b_k`` are
built from the structure constants and the Lindblad vector ``g_k`` of each
channel (``gamma_k = g_k . lambda``; the identity component is not modelled).

Two independent routes to ``(M, b)`` live here: :func:`assemble` contracts the
structure constants, :func:`model_from_superoperator` applies the density
matrix Liouvillian to every generator. They are expected to agree to ~1e-14.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError
from .su_algebra import (
    GellMannBasis,
    HamiltonianDecomposition,
    StructureConstants,
    operator_from_vector,
    star,
    su,
    vector_from_operator,
    wedge,
)

__all__ = [
    "LindbladChannel",
    "CMatrices",
    "EvolutionModel",
    "liouvillian_direct",
    "c_matrices",
    "hamiltonian_generator",
    "channel_generators",
    "assemble",
    "rhs",
    "vector_form_rhs",
    "model_from_superoperator",
]


@dataclass(frozen=True)
class LindbladChannel:
    """One Markovian channel; its rate is carried by ``|g|**2``."""

    label: str
    g: np.ndarray

    def __post_init__(self):
        g = np.array(self.g, dtype=complex)
        if g.ndim != 1:
            raise DimensionError(f"Lindblad vector must be 1-d, got shape {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ValueError(f"channel {self.label!r} has non-finite entries")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    def operator(self, basis: GellMannBasis) -> np.ndarray:
        return operator_from_vector(self.g, basis)


@dataclass(frozen=True)
class CMatrices:
    c_plus: np.ndarray  # real symmetric
    c_minus: np.ndarray  # purely imaginary, antisymmetric


@dataclass(frozen=True)
class EvolutionModel:
    m: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        b = np.array(self.b, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or b.shape != (m.shape[0],):
            raise DimensionError(f"inconsistent model shapes {m.shape}, {b.shape}")
        m.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "b", b)

    @property
    def size(self) -> int:
        return self.b.shape[0]


def _dissipator(rho, ops):
    out = np.zeros_like(rho, dtype=complex)
    for L in ops:
        LdL = L.conj().T @ L
        out += L @ rho @ L.conj().T - 0.5 * (LdL @ rho + rho @ LdL)
    return out


def liouvillian_direct(
    rho,
    hamiltonian: HamiltonianDecomposition | np.ndarray,
    channels: Sequence[LindbladChannel],
    basis: GellMannBasis | None = None,
) -> np.ndarray:
    """``-i[H, rho] + sum_k (L rho L^+ - {L^+ L, rho}/2)`` evaluated on matrices.

    ``hamiltonian`` is either a decomposition ``(omega0, omega)`` or a plain
    matrix; channels are turned into operators via ``g_k . lambda``.
    """
    rho = np.asarray(rho, dtype=complex)
    if basis is None:
        basis = su(rho.shape[0])[0]
    if isinstance(hamiltonian, HamiltonianDecomposition):
        H = hamiltonian.omega0 * np.eye(basis.dim) + operator_from_vector(hamiltonian.omega, basis)
    else:
        H = np.asarray(hamiltonian, dtype=complex)
    ops = [ch.operator(basis) for ch in channels]
    return -1j * (H @ rho - rho @ H) + _dissipator(rho, ops)


def c_matrices(ch: LindbladChannel) -> CMatrices:
    g = ch.g
    a = np.outer(g.conj(), g)
    c_plus = (a + a.T).real
    c_minus = 1j * (a - a.T).imag
    return CMatrices(c_plus=c_plus, c_minus=c_minus)


def hamiltonian_generator(omega, sc: StructureConstants) -> np.ndarray:
    """Antisymmetric ``M0_rt = 2 f_rst omega_s`` (so that ``M0 x = 2 omega ^ x``)."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (sc.size,):
        raise DimensionError(f"expected omega of length {sc.size}, got {omega.shape}")
    return 2 * np.einsum("rst,s->rt", sc.f, omega)


def channel_generators(ch: LindbladChannel, sc: StructureConstants):
    """Return ``(G+, G-, b_k)`` for one channel.

    ``b_k`` comes from ``(2i/N) g ^ g*``; the component form
    ``f_rvs C-_sv`` evaluates to ``2 (g ^ g*)`` and is not used.
    """
    if ch.g.shape != (sc.size,):
        raise DimensionError(f"channel {ch.label!r} has length {ch.g.shape[0]}, expected {sc.size}")
    f, d = sc.f, sc.d
    c = c_matrices(ch)
    g_plus = np.einsum("rsm,mvt,sv->rt", f, f, c.c_plus)
    g_minus = 0.25j * (
        np.einsum("rms,mvt,sv->rt", d, f, c.c_minus)
        - np.einsum("rmt,msv,sv->rt", d, f, c.c_minus)
        + 3 * np.einsum("rms,mvt,sv->rt", f, d, c.c_minus)
    )
    b_k = (2j / sc.dim) * wedge(ch.g, ch.g.conj(), sc)
    return g_plus, g_minus.real, b_k.real


def assemble(omega, channels: Sequence[LindbladChannel], sc: StructureConstants) -> EvolutionModel:
    m = hamiltonian_generator(omega, sc)
    b = np.zeros(sc.size)
    for ch in channels:
        gp, gm, bk = channel_generators(ch, sc)
        m = m + gp + gm
        b = b + bk
    return EvolutionModel(m=m, b=b)


def rhs(x, model: EvolutionModel) -> np.ndarray:
    return model.m @ np.asarray(x, dtype=float) + model.b


def vector_form_rhs(x, omega, channels: Sequence[LindbladChannel], sc: StructureConstants) -> np.ndarray:
    """Evaluate ``dx/dt`` directly with wedge and star products.

    Written term by term from the vector master equation; no matrices are
    assembled, so it doubles as a check on :func:`assemble`.
    """
    x = np.asarray(x, dtype=float)
    out = 2 * wedge(omega, x, sc).astype(complex)
    for ch in channels:
        g, gs = ch.g, ch.g.conj()
        out += (2j / sc.dim) * wedge(g, gs, sc)
        out += wedge(gs, wedge(g, x, sc), sc) + wedge(g, wedge(gs, x, sc), sc)
        out += 0.25j * (
            star(wedge(g, x, sc), gs, sc)
            + star(g, wedge(x, gs, sc), sc)
            - 2 * star(wedge(gs, g, sc), x, sc)
            + 3 * wedge(star(g, x, sc), gs, sc)
            + 3 * wedge(g, star(x, gs, sc), sc)
        )
    return out.real


def model_from_superoperator(
    hamiltonian: HamiltonianDecomposition | np.ndarray,
    channels: Sequence[LindbladChannel],
    basis: GellMannBasis,
) -> EvolutionModel:
    """Read ``(M, b)`` off the matrix Liouvillian, bypassing the structure constants."""
    n = basis.size
    m = np.empty((n, n))
    for t in range(n):
        m[:, t] = vector_from_operator(
            liouvillian_direct(basis.generators[t], hamiltonian, channels, basis), basis
        ).real
    b = vector_from_operator(
        liouvillian_direct(np.eye(basis.dim) / basis.dim, hamiltonian, channels, basis), basis
    ).real
    return EvolutionModel(m=m, b=b)

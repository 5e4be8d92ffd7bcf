"""
Generalized Gell-Mann generators of su(N) and the vector algebra built on them.

Generators are ordered column by column: for every column ``k = 1..N-1`` the
symmetric and antisymmetric pairs ``(j, k)`` with ``j < k`` come first,
followed by the ``k``-th diagonal generator. For N = 2 this gives the Pauli
matrices, for N = 3 the eight Gell-Mann matrices in their textbook order.

All quantities use hbar = 1. States are plain numpy arrays: a density matrix
is a complex ``(N, N)`` array, a coherence vector a real ``(N**2 - 1,)`` array
with ``rho = 1/N + x . lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionError,
    InvalidDimensionError,
    InvalidOperatorError,
    InvalidStateError,
)

__all__ = [
    "GellMannBasis",
    "StructureConstants",
    "HamiltonianDecomposition",
    "build_basis",
    "structure_constants",
    "su",
    "wedge",
    "star",
    "to_coherence",
    "from_coherence",
    "decompose_hamiltonian",
    "operator_from_vector",
    "vector_from_operator",
]

_ZERO_CUTOFF = 1e-12
_STATE_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GellMannBasis:
    dim: int
    generators: np.ndarray  # (N**2 - 1, N, N) complex

    @property
    def size(self) -> int:
        return self.dim**2 - 1

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, i):
        return self.generators[i]


@dataclass(frozen=True)
class StructureConstants:
    """Totally antisymmetric ``f`` and totally symmetric ``d`` tensors.

    ``[l_r, l_s] = 2i f_rst l_t`` and ``{l_r, l_s} = (4/N) delta_rs + 2 d_rst l_t``.
    """

    dim: int
    f: np.ndarray
    d: np.ndarray

    @property
    def size(self) -> int:
        return self.dim**2 - 1


@dataclass(frozen=True)
class HamiltonianDecomposition:
    """``H = omega0 * 1 + omega . lambda`` (hbar = 1)."""

    omega0: float
    omega: np.ndarray


def build_basis(N: int) -> GellMannBasis:
    """Generalized Gell-Mann basis of su(N), normalized to Tr[l_r l_s] = 2 delta_rs."""
    if int(N) != N or N < 2:
        raise InvalidDimensionError(f"su(N) needs an integer N >= 2, got {N!r}")
    N = int(N)
    gens = []
    for k in range(1, N):
        for j in range(k):
            sym = np.zeros((N, N), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            anti = np.zeros((N, N), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            gens += [sym, anti]
        diag = np.zeros(N)
        diag[:k] = 1.0
        diag[k] = -k
        gens.append(np.diag(diag * np.sqrt(2.0 / (k * (k + 1)))).astype(complex))
    return GellMannBasis(dim=N, generators=_frozen(np.stack(gens)))


def structure_constants(basis: GellMannBasis) -> StructureConstants:
    """Compute f and d from the trace formulas.

    ``f_rst = Tr([l_r, l_s] l_t) / 4i`` and ``d_rst = Tr({l_r, l_s} l_t) / 4``.
    The raw tensors are checked to be real to 1e-12, then (anti)symmetrized
    over all index permutations and entries below 1e-12 are zeroed.
    """
    lam = basis.generators
    prod = np.einsum("rij,sjk->rsik", lam, lam)
    comm = prod - prod.transpose(1, 0, 2, 3)
    acomm = prod + prod.transpose(1, 0, 2, 3)
    f = np.einsum("rsik,tki->rst", comm, lam) / 4j
    d = np.einsum("rsik,tki->rst", acomm, lam) / 4
    residue = max(np.abs(f.imag).max(), np.abs(d.imag).max())
    if residue > _ZERO_CUTOFF:
        raise InvalidOperatorError(
            f"structure constants have imaginary residue {residue:.3g}; basis is not Hermitian"
        )
    f, d = f.real, d.real

    even = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    odd = [(1, 0, 2), (0, 2, 1), (2, 1, 0)]
    f = (sum(f.transpose(p) for p in even) - sum(f.transpose(p) for p in odd)) / 6
    d = sum(d.transpose(p) for p in even + odd) / 6
    f[np.abs(f) < _ZERO_CUTOFF] = 0.0
    d[np.abs(d) < _ZERO_CUTOFF] = 0.0
    return StructureConstants(dim=basis.dim, f=_frozen(f), d=_frozen(d))


@lru_cache(maxsize=None)
def su(N: int = 3) -> tuple[GellMannBasis, StructureConstants]:
    """Cached ``(basis, structure constants)`` pair for su(N)."""
    basis = build_basis(N)
    return basis, structure_constants(basis)


def _check_pair(a, b, sc: StructureConstants):
    a = np.asarray(a)
    b = np.asarray(b)
    n = sc.size
    if a.shape != (n,) or b.shape != (n,):
        raise DimensionError(f"expected two vectors of length {n}, got {a.shape} and {b.shape}")
    return a, b


def wedge(a, b, sc: StructureConstants) -> np.ndarray:
    """Antisymmetric product ``(a ^ b)_r = f_rst a_s b_t``."""
    a, b = _check_pair(a, b, sc)
    return np.einsum("rst,s,t->r", sc.f, a, b)


def star(a, b, sc: StructureConstants) -> np.ndarray:
    """Symmetric product ``(a * b)_r = d_rst a_s b_t``."""
    a, b = _check_pair(a, b, sc)
    return np.einsum("rst,s,t->r", sc.d, a, b)


def operator_from_vector(v, basis: GellMannBasis) -> np.ndarray:
    """``v . lambda`` for a real or complex coefficient vector."""
    v = np.asarray(v)
    if v.shape != (basis.size,):
        raise DimensionError(f"expected length {basis.size}, got {v.shape}")
    return np.einsum("i,ijk->jk", v, basis.generators)


def vector_from_operator(op, basis: GellMannBasis) -> np.ndarray:
    """Complex coefficients ``Tr[op l_i] / 2`` of the traceless part of ``op``."""
    op = np.asarray(op)
    return np.einsum("jk,ikj->i", op, basis.generators) / 2


def to_coherence(rho, basis: GellMannBasis) -> np.ndarray:
    """Coherence vector ``x_i = Tr[rho l_i] / 2`` of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    N = basis.dim
    if rho.shape != (N, N):
        raise DimensionError(f"expected a {N}x{N} density matrix, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > _STATE_TOL:
        raise InvalidStateError(f"density matrix is not Hermitian (deviation {herm:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1) > _STATE_TOL:
        raise InvalidStateError(f"density matrix trace is {tr:.6g}, expected 1")
    return vector_from_operator(rho, basis).real


def from_coherence(x, basis: GellMannBasis) -> np.ndarray:
    """Density matrix ``1/N + x . lambda``; Hermitian with unit trace for any real x."""
    x = np.asarray(x, dtype=float)
    return np.eye(basis.dim) / basis.dim + operator_from_vector(x, basis)


def decompose_hamiltonian(H, basis: GellMannBasis | None = None) -> HamiltonianDecomposition:
    """Split a Hermitian matrix into ``omega0 * 1 + omega . lambda``."""
    H = np.asarray(H, dtype=complex)
    if basis is None:
        basis = su(H.shape[0])[0]
    if H.shape != (basis.dim, basis.dim):
        raise DimensionError(f"expected a {basis.dim}x{basis.dim} matrix, got {H.shape}")
    dev = np.abs(H - H.conj().T).max()
    if dev > _STATE_TOL:
        raise InvalidOperatorError(f"Hamiltonian is not Hermitian (deviation {dev:.3g})")
    omega0 = float(np.trace(H).real / basis.dim)
    omega = vector_from_operator(H, basis).real
    return HamiltonianDecomposition(omega0=omega0, omega=_frozen(omega))

"""Spectral analysis, time evolution and the asymptotic state of ``dx/dt = M x + b``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import SingularEvolutionError, StiffnessError
from .master_equation import EvolutionModel

__all__ = ["SpectrumReport", "spectrum", "evolve", "trajectory", "asymptotic"]

ZERO_MODE_TOL = 1e-9
DIAGONALIZABLE_COND = 1e8
SINGULAR_RTOL = 1e-10
RTOL, ATOL = 1e-10, 1e-12


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray  # sorted by descending real part
    max_real_part: float
    diagonalizable: bool
    zero_modes: int
    eigenvector_condition: float


def spectrum(model: EvolutionModel, tol: float = ZERO_MODE_TOL) -> SpectrumReport:
    """Eigenvalues of M with a numerical diagonalizability test.

    M counts as diagonalizable when its (unit-column) eigenvector matrix has
    a 2-norm condition number below 1e8. Jordan blocks are not constructed.
    """
    try:
        w, v = np.linalg.eig(model.m)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"eigensolver failed: {exc}") from exc
    order = np.lexsort((-w.imag, -w.real))
    w, v = w[order], v[:, order]
    cond = float(np.linalg.cond(v))
    zero = int(np.sum((np.abs(w.real) < tol) & (np.abs(w.imag) < tol)))
    return SpectrumReport(
        eigenvalues=w,
        max_real_part=float(w.real.max()),
        diagonalizable=bool(np.isfinite(cond) and cond < DIAGONALIZABLE_COND),
        zero_modes=zero,
        eigenvector_condition=cond,
    )


def _integrate(x0, model, t_span, t_eval=None):
    x0 = np.asarray(x0, dtype=float)
    m, b = model.m, model.b
    sol = solve_ivp(
        lambda _t, x: m @ x + b,
        t_span,
        x0,
        method="DOP853",
        rtol=RTOL,
        atol=ATOL,
        t_eval=t_eval,
    )
    if not sol.success:
        raise StiffnessError(f"integration failed: {sol.message}")
    return sol


def evolve(x0, model: EvolutionModel, t: float) -> np.ndarray:
    """Coherence vector at time ``t`` by adaptive Runge-Kutta (DOP853) integration."""
    if not np.isfinite(t) or t < 0:
        raise ValueError(f"t must be finite and nonnegative, got {t!r}")
    x0 = np.asarray(x0, dtype=float)
    if t == 0:
        return x0.copy()
    return _integrate(x0, model, (0.0, float(t))).y[:, -1]


def trajectory(x0, model: EvolutionModel, times) -> np.ndarray:
    """Coherence vectors at each of ``times`` (ascending, starting at or after 0); shape ``(len(times), n)``."""
    times = np.asarray(times, dtype=float)
    sol = _integrate(x0, model, (0.0, float(times[-1])), t_eval=times)
    return sol.y.T


def asymptotic(model: EvolutionModel) -> np.ndarray:
    """Unique fixed point ``-M^-1 b``.

    Refuses (rather than pseudo-inverting) when the smallest singular value of
    M is below 1e-10 of the largest: the long-time state then depends on the
    initial condition.
    """
    s = np.linalg.svd(model.m, compute_uv=False)
    if s[0] == 0 or s[-1] < SINGULAR_RTOL * s[0]:
        raise SingularEvolutionError(
            f"evolution matrix is singular (sigma_min/sigma_max = {s[-1] / s[0] if s[0] else 0:.3g})"
        )
    return -np.linalg.solve(model.m, model.b)

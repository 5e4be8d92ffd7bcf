"""
Linear optical response of the Lambda medium.

The susceptibility is ``chi = kappa * rho_ab / Omega_b`` evaluated on the
asymptotic state, with ``rho_ab = x4 + i x5``. Two routes are available:

* :func:`susceptibility_numeric` solves the steady state of the full model
  with a weak probe (the reference result);
* :func:`chi_closed_form` evaluates the closed-form expressions for each
  channel family, in the line-width convention of :mod:`eitlambda.lambda_model`
  and with ``gamma_b = gamma_c``.

``kappa`` is an overall scale (1 by default). The group index is
``n_g = omega * d(Re chi)/d(delta) / 2`` and the absorption coefficient
``alpha = (2 pi / wavelength) Im chi``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRateError, PoleError, RegimeError, SingularEvolutionError, StencilError
from .lambda_model import ChannelRates, LambdaParams, derived_params, evolution_model
from .steady_state import asymptotic

__all__ = [
    "ChannelKind",
    "OpticalResponse",
    "PROBE_FRACTION",
    "probe_params",
    "rates_for_kind",
    "susceptibility_numeric",
    "chi_closed_form",
    "susceptibility",
    "dispersion_slope",
    "group_index",
    "absorption",
    "normalized_rates",
    "optical_response",
]

PROBE_FRACTION = 1e-4
MAX_PROBE_FRACTION = 1e-3
_POLE_RTOL = 1e-13


class ChannelKind(str, enum.Enum):
    IDEAL = "ideal"
    DEPHASE = "dephase"
    DEPOL = "depol"
    DAMP_BC = "damp_bc"
    DAMP_CB = "damp_cb"
    POPEX = "popex"
    GENERAL = "general"

    @classmethod
    def parse(cls, value) -> "ChannelKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown channel kind {value!r} (expected one of {names})") from None


@dataclass(frozen=True)
class OpticalResponse:
    chi: complex
    n_g_integrand: float  # d(Re chi)/d(delta)
    alpha: float
    kappa: float = 1.0
    wavelength: float = 2 * np.pi


def probe_params(
    delta=0.0,
    Delta=0.0,
    omega_c=0.16,
    gamma=1.0,
    phi_b=0.0,
    phi_c=0.0,
    probe_fraction=PROBE_FRACTION,
    branching=0.5,
) -> LambdaParams:
    """Lambda parameters in the weak-probe regime, ``|Omega_b| = probe_fraction * |Omega_c|``."""
    oc = abs(omega_c)
    return LambdaParams.from_detunings(
        delta=delta,
        Delta=Delta,
        omega_b=probe_fraction * oc * np.exp(1j * phi_b),
        omega_c=oc * np.exp(1j * phi_c),
        gamma=gamma,
        branching=branching,
    )


def rates_for_kind(kind, rate: float) -> ChannelRates:
    """Channel rates switching on a single family (``general`` switches on all)."""
    kind = ChannelKind.parse(kind)
    if rate < 0:
        raise InvalidRateError(f"rate must be nonnegative, got {rate!r}")
    return {
        ChannelKind.IDEAL: lambda: ChannelRates(),
        ChannelKind.DEPHASE: lambda: ChannelRates(eta_z=rate),
        ChannelKind.DEPOL: lambda: ChannelRates(eta_depol=rate),
        ChannelKind.DAMP_BC: lambda: ChannelRates(eta_bc=rate),
        ChannelKind.DAMP_CB: lambda: ChannelRates(eta_cb=rate),
        ChannelKind.POPEX: lambda: ChannelRates(eta_bc=rate, eta_cb=rate),
        ChannelKind.GENERAL: lambda: ChannelRates(eta_z=rate, eta_depol=rate, eta_bc=rate, eta_cb=rate),
    }[kind]()


def normalized_rates(eta_z: float) -> dict:
    """Rates giving equal first-order slow-down: ``eta_z = eta_bc/4 = eta_cb/4 = eta_pe/4 = 2 eta/3``."""
    if eta_z < 0:
        raise InvalidRateError(f"eta_z must be nonnegative, got {eta_z!r}")
    return {
        ChannelKind.IDEAL: ChannelRates(),
        ChannelKind.DEPHASE: ChannelRates(eta_z=eta_z),
        ChannelKind.DAMP_BC: ChannelRates(eta_bc=4 * eta_z),
        ChannelKind.DAMP_CB: ChannelRates(eta_cb=4 * eta_z),
        ChannelKind.POPEX: ChannelRates(eta_bc=4 * eta_z, eta_cb=4 * eta_z),
        ChannelKind.DEPOL: ChannelRates(eta_depol=1.5 * eta_z),
    }


def susceptibility_numeric(p: LambdaParams, r: ChannelRates, kappa: float = 1.0) -> complex:
    """``kappa * (x4 + i x5) / Omega_b`` on the asymptotic state of the full model."""
    ob, oc = abs(p.omega_b), abs(p.omega_c)
    if ob == 0:
        raise RegimeError("probe Rabi frequency must be nonzero")
    if ob > MAX_PROBE_FRACTION * oc:
        raise RegimeError(
            f"|Omega_b| = {ob:.3g} exceeds {MAX_PROBE_FRACTION:g} |Omega_c| = {MAX_PROBE_FRACTION * oc:.3g}; "
            "outside linear response"
        )
    x = asymptotic(evolution_model(p, r))
    return kappa * complex(x[3], x[4]) / complex(p.omega_b)


def _check_only(kind, r: ChannelRates, allowed):
    extra = [
        name
        for name in ("eta_x", "eta_y", "eta_z", "eta_depol", "eta_bc", "eta_cb")
        if name not in allowed and getattr(r, name) != 0
    ]
    if extra:
        raise ValueError(f"closed form for {kind.value!r} requires {', '.join(extra)} = 0")


def _divide(num, den, scale, delta):
    if not np.isfinite(den) or abs(den) <= _POLE_RTOL * scale:
        raise PoleError(f"closed-form denominator vanishes at delta = {delta!r}", delta=delta)
    return num / den


def chi_closed_form(kind, delta: float, Delta: float, p: LambdaParams, r: ChannelRates, kappa: float = 1.0) -> complex:
    """Closed-form susceptibility of one channel family at ``(delta, Delta)``.

    Uses ``gamma = p.gamma`` and ``|Omega_c|`` from ``p``; the detunings in
    ``p`` are ignored in favour of the explicit ``delta`` and ``Delta``.
    """
    kind = ChannelKind.parse(kind)
    g = p.gamma
    w = abs(p.omega_c) ** 2
    d, D = float(delta), float(Delta)

    if kind is ChannelKind.IDEAL:
        _check_only(kind, r, ())
        num = -2 * d
        den = 2 * d * (d + D + 1j * g) - w
        scale = abs(2 * d * (d + D + 1j * g)) + w
    elif kind is ChannelKind.DEPHASE:
        _check_only(kind, r, ("eta_z",))
        e = r.eta_z
        num = -(d + 1j * e)
        t = (d + 1j * e) * ((d + D) + 1j * (g + e / 2))
        den, scale = t - w / 2, abs(t) + w / 2
    elif kind is ChannelKind.DAMP_BC:
        _check_only(kind, r, ("eta_bc",))
        e = r.eta_bc
        num = -(d + 1j * e / 4)
        t = (d + 1j * e / 4) * (d + D + 1j * g)
        den, scale = t - w / 2, abs(t) + w / 2
    elif kind is ChannelKind.DAMP_CB:
        _check_only(kind, r, ("eta_cb",))
        e = r.eta_cb
        num = 2 * (g * (4j * d + e) + e * (e - 2j * (d + D))) * w
        f1 = (e - 4j * d) * (2j * g + 2 * (d + D) + 1j * e)
        f2 = (g**2 + (d - D) ** 2) * e + (g + 2 * e) * w
        den = (f1 + 4j * w) * f2
        scale = (abs(f1) + 4 * w) * abs(f2)
    elif kind is ChannelKind.POPEX:
        _check_only(kind, r, ("eta_bc", "eta_cb"))
        if r.eta_bc != r.eta_cb:
            raise ValueError("population exchange needs eta_bc == eta_cb")
        e = r.eta_bc
        lor = 4 * (d - D) ** 2 + (2 * g + e) ** 2
        num = -g * e * (2 * d + 1j * e) * lor + 4 * g * (-2 * g * d + (-2 * d + D) * e) * w
        f1 = (2 * d + 1j * e) * (2j * g + 2 * (d + D) + 1j * e)
        f2 = g * e * lor + (2 * g + e) * (g + 3 * e) * w
        den = (f1 - 2 * w) * f2
        scale = (abs(f1) + 2 * w) * abs(f2)
    elif kind is ChannelKind.DEPOL:
        _check_only(kind, r, ("eta_depol",))
        e = r.eta_depol
        lor = 4 * (d - D) ** 2 + (2 * g + e) ** 2
        num = 2j * g * (
            e * (3 * d + 2j * e) * lor + 3 * (g * (6 * d + 2j * e) + (5 * d - 2 * D + 1j * e) * e) * w
        )
        f1 = (3 * d + 2j * e) * (2 * g - 2j * (d + D) + e)
        f2 = 2 * g * e * lor + 3 * (2 * g + e) * (g + 2 * e) * w
        den = (f1 + 3j * w) * f2
        scale = (abs(f1) + 3 * w) * abs(f2)
    else:  # GENERAL
        _check_only(kind, r, ("eta_z", "eta_depol", "eta_bc", "eta_cb"))
        dp = derived_params(p.replace(delta_b=D + d, delta_c=D - d), r)
        G, Gb, Gc = dp.Gamma, dp.Gamma_b, dp.Gamma_c
        em, ep = dp.eta_minus, dp.eta_plus
        num = 1j * (
            w * (2 * np.conj(G) * Gc.real * (g + 2 * em) + g * np.conj(Gc) * (2 * em - ep))
            + g * (2 * em + ep) * np.conj(G) * abs(Gc) ** 2
        )
        f1 = w + np.conj(G) * np.conj(Gb)
        f2 = w * Gc.real * (2 * g - 2 * em + 3 * ep) + 2 * g * ep * abs(Gc) ** 2
        den = f1 * f2
        scale = (w + abs(G * Gb)) * (abs(w * Gc.real * (2 * g - 2 * em + 3 * ep)) + abs(2 * g * ep) * abs(Gc) ** 2)
    return kappa * complex(_divide(num, den, scale, d))


def susceptibility(kind, delta, Delta, p: LambdaParams, r: ChannelRates, kappa=1.0, method="numeric") -> complex:
    """Dispatch to the numeric or closed-form route at ``(delta, Delta)``."""
    if method == "closed":
        return chi_closed_form(kind, delta, Delta, p, r, kappa)
    if method != "numeric":
        raise ValueError(f"method must be 'numeric' or 'closed', got {method!r}")
    return susceptibility_numeric(p.replace(delta_b=Delta + delta, delta_c=Delta - delta), r, kappa)


def default_step(p: LambdaParams) -> float:
    g = p.gamma
    return 1e-4 * max(g, abs(p.omega_c) ** 2 / g)


def dispersion_slope(kind, p: LambdaParams, r: ChannelRates, step=None, kappa=1.0, method="closed") -> float:
    """``d(Re chi)/d(delta)`` at ``(p.delta, p.Delta)``.

    Central differences at ``h`` and ``h/2`` combined by one Richardson step;
    the same estimate with ``h/2`` and ``h/4`` must agree to 1e-5 relative.
    """
    h = default_step(p) if step is None else float(step)
    if not h > 0:
        raise ValueError("finite-difference step must be positive")
    d0, D = p.delta, p.Delta

    def re_chi(d):
        try:
            return susceptibility(kind, d, D, p, r, kappa, method).real
        except (PoleError, SingularEvolutionError) as exc:
            raise StencilError(f"stencil around delta = {d0} hits a singular point: {exc}") from exc

    samples = {k: re_chi(d0 + k * h / 4) for k in (-4, -2, -1, 1, 2, 4)}
    c1 = (samples[4] - samples[-4]) / (2 * h)
    c2 = (samples[2] - samples[-2]) / h
    c4 = (samples[1] - samples[-1]) / (h / 2)
    r1 = (4 * c2 - c1) / 3
    r2 = (4 * c4 - c2) / 3
    if abs(r1 - r2) > 1e-5 * max(abs(r2), 1e-12):
        raise StencilError(f"finite difference not converged: {r1!r} vs {r2!r} (step {h:g})")
    return r2


def group_index(kind, p: LambdaParams, r: ChannelRates, omega_probe: float, step=None, kappa=1.0, method="closed") -> float:
    """``n_g = omega_probe * d(Re chi)/d(delta) / 2``."""
    return omega_probe * dispersion_slope(kind, p, r, step, kappa, method) / 2


def absorption(chi: complex, wavelength: float = 2 * np.pi) -> float:
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength!r}")
    return 2 * np.pi / wavelength * complex(chi).imag


def optical_response(kind, p: LambdaParams, r: ChannelRates, kappa=1.0, wavelength=2 * np.pi, method="numeric") -> OpticalResponse:
    chi = susceptibility(kind, p.delta, p.Delta, p, r, kappa, method)
    return OpticalResponse(
        chi=chi,
        n_g_integrand=dispersion_slope(kind, p, r, kappa=kappa, method=method),
        alpha=absorption(chi, wavelength),
        kappa=kappa,
        wavelength=wavelength,
    )

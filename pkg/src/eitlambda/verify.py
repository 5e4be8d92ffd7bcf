"""
Cross-checks of the closed-form results against the Lindblad dynamics.

Every check measures one number and compares it with a tolerance. Checks
that are known to disagree with a tabulated closed form are listed in the
erratum ledger (``data/errata.toml``) together with the value they are
expected to measure; such a check is reported as ``known`` when it matches
the recorded value and as ``FAIL`` otherwise. Only master-equation and
lambda-model items may be ledgered; a ledger entry for any other component
fails its check. Advisory checks (approximation quality, modeling
assumptions) report ``info`` when outside tolerance and never fail the
report. The report fails iff any check has status ``FAIL``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from importlib import resources

import numpy as np

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .lambda_model import (
    ChannelRates,
    LambdaParams,
    analytic_blocks,
    block_discrepancy,
    dark_state,
    decay_channels,
    hamiltonian_matrix,
    oracle_model,
    standard_channels,
    transform_T,
)
from .master_equation import (
    LindbladChannel,
    assemble,
    c_matrices,
    channel_generators,
    liouvillian_direct,
    model_from_superoperator,
    rhs,
    vector_form_rhs,
)
from .response import ChannelKind, chi_closed_form, dispersion_slope, probe_params, rates_for_kind, susceptibility
from .su_algebra import decompose_hamiltonian, operator_from_vector, su, to_coherence, vector_from_operator
from .sweep import ScenarioConfig

__all__ = ["Check", "VerifyReport", "load_errata", "run_verify"]

LEDGER_COMPONENTS = ("master-equation", "lambda-model")

SECTIONS = {
    1: "vector form vs superoperator",
    2: "closed-form blocks vs oracle",
    3: "closed-form susceptibilities vs steady state",
}


@dataclass
class Check:
    section: int
    name: str
    measured: float
    tolerance: float
    status: str = ""
    detail: str = ""
    advisory: bool = False

    def __post_init__(self):
        self.measured = float(self.measured)
        self.tolerance = float(self.tolerance)


@dataclass
class VerifyReport:
    checks: list

    @property
    def ok(self) -> bool:
        return not any(c.status == "FAIL" for c in self.checks)

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "checks": [asdict(c) for c in self.checks]}, indent=2)

    def to_text(self) -> str:
        lines = []
        for sec, title in SECTIONS.items():
            lines.append(f"[{sec}] {title}")
            for c in (c for c in self.checks if c.section == sec):
                lines.append(
                    f"  {c.status:<5} {c.name:<38} measured={c.measured:<12.6g} tol={c.tolerance:.1g}"
                    + (f"  {c.detail}" if c.detail else "")
                )
        lines.append("verify: " + ("OK" if self.ok else "FAILED"))
        return "\n".join(lines)


def load_errata() -> dict:
    text = resources.files("eitlambda").joinpath("data/errata.toml").read_text(encoding="utf-8")
    return {e["id"]: e for e in tomllib.loads(text)["erratum"]}


def _random_density_matrix(rng, n=3):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def _random_channels(rng, count, n=8):
    return [LindbladChannel(f"r{i}", rng.normal(size=n) + 1j * rng.normal(size=n)) for i in range(count)]


def _section1(cfg, rng):
    basis, sc = su(3)
    err_assemble = err_vector = err_gminus = 0.0
    ratios = []
    for _ in range(200):
        omega = rng.normal(size=8)
        chans = _random_channels(rng, rng.integers(1, 4))
        model = assemble(omega, chans, sc)
        rho = _random_density_matrix(rng)
        x = to_coherence(rho, basis)
        H = operator_from_vector(omega, basis)
        direct = vector_from_operator(liouvillian_direct(rho, H, chans, basis), basis).real
        err_assemble = max(err_assemble, np.abs(rhs(x, model) - direct).max())
        err_vector = max(err_vector, np.abs(vector_form_rhs(x, omega, chans, sc) - direct).max())
        ch = chans[0]
        gp, gm, bk = channel_generators(ch, sc)
        single = model_from_superoperator(np.zeros((3, 3)), [ch], basis)
        err_gminus = max(err_gminus, np.abs(single.m - gp - gm).max())
        tabulated = np.einsum("rvs,sv->r", sc.f, c_matrices(ch).c_minus)
        i = np.argmax(np.abs(bk))
        ratios.append(tabulated[i] / bk[i])

    for kind in cfg.channels:
        if cfg.sweep == "delta" and kind != "ideal" and kind not in cfg.rates:
            continue
        p = cfg.lambda_params()
        r = cfg.rates_for(kind)
        chans = standard_channels(p, r)
        model = assemble(decompose_hamiltonian(hamiltonian_matrix(p)).omega, chans, sc)
        for _ in range(20):
            rho = _random_density_matrix(rng)
            x = to_coherence(rho, basis)
            direct = vector_from_operator(liouvillian_direct(rho, hamiltonian_matrix(p), chans, basis), basis).real
            err_assemble = max(err_assemble, np.abs(rhs(x, model) - direct).max())

    ratios = np.array(ratios)
    spread = float(np.abs(ratios - ratios.mean()).max())
    b_row = Check(1, "b-component-formula", float(abs(ratios.mean() - 1)), 1e-10,
                  detail=f"tabulated/oracle = {ratios.mean():.6g}")
    if spread > 1e-9:
        b_row.status = "FAIL"
        b_row.detail += f"; ratio not constant (spread {spread:.3g})"
    return [
        Check(1, "assembled M x + b vs Liouvillian", err_assemble, 1e-10),
        Check(1, "wedge/star form vs Liouvillian", err_vector, 1e-10),
        Check(1, "G- contraction vs oracle", err_gminus, 1e-10),
        b_row,
    ]


def _section2(cfg, rng):
    checks = []
    worst = {"C": 0.0, "-C^T": 0.0, "B": 0.0, "A": 0.0, "b'": 0.0}
    kinds = [ChannelKind.IDEAL, ChannelKind.DEPHASE, ChannelKind.DEPOL, ChannelKind.POPEX, ChannelKind.GENERAL]
    base = cfg.lambda_params()
    for kind in kinds:
        for _ in range(5):
            p = base.replace(
                delta_b=rng.normal(), delta_c=rng.normal(),
                omega_b=abs(base.omega_c) * rng.uniform(0.1, 1) * np.exp(2j * np.pi * rng.uniform()),
                omega_c=abs(base.omega_c) * np.exp(2j * np.pi * rng.uniform()),
            )
            diff = block_discrepancy(p, rates_for_kind(kind, rng.uniform(0.01, 0.3)))
            for key in worst:
                worst[key] = max(worst[key], np.abs(diff[key]).max())
    for key, tol in (("C", 1e-12), ("-C^T", 1e-12), ("B", 1e-10), ("A", 1e-10), ("b'", 1e-12)):
        checks.append(Check(2, f"block {key}", worst[key], tol))

    # Unequal amplitude-damping rates expose the A(3,4) coupling.
    p = cfg.lambda_params()
    r = ChannelRates(eta_bc=0.2, eta_cb=0.05)
    T = transform_T()
    Mp = T @ oracle_model(p, r).m @ T.T
    tabulated = analytic_blocks(p, r)[0][2, 3]
    checks.append(Check(2, "damping-coupling-factor", Mp[2, 3] / tabulated - 1, 1e-10,
                        detail=f"oracle/tabulated = {Mp[2, 3] / tabulated:.6g}"))

    # Decay vectors with unscaled rates gamma_b + gamma_c = gamma.
    basis = su(3)[0]
    gamma = p.gamma
    bare = model_from_superoperator(hamiltonian_matrix(p), decay_channels(p.gamma_b, p.gamma_c), basis)
    e4 = (T @ bare.b)[3]
    checks.append(Check(2, "decay-normalization", e4 / (gamma / np.sqrt(3)) - 1, 1e-12,
                        detail=f"b'_4 = {e4:.6g}, closed form {gamma / np.sqrt(3):.6g}"))

    q = LambdaParams(delta_b=0.3, delta_c=0.1, omega_b=0.2, omega_c=0.5)
    w8 = decompose_hamiltonian(hamiltonian_matrix(q)).omega[7]
    tabulated = -q.Delta / np.sqrt(3)
    checks.append(Check(2, "mean-detuning-sign", w8 / tabulated - 1, 1e-12,
                        detail=f"omega_8 = {w8:.6g}, closed form {tabulated:.6g}"))

    q = LambdaParams(omega_b=0.3 * np.exp(0.7j), omega_c=0.5 * np.exp(-0.4j))
    H = hamiltonian_matrix(q)
    leak_plain = abs((H @ dark_state(q.omega_b, q.omega_c))[2])
    leak_conj = abs((H @ dark_state(q.omega_b, q.omega_c, conjugate=True))[2])
    checks.append(Check(2, "dark state <a|H|d>", leak_plain, 1e-14))
    checks.append(Check(2, "dark-state-conjugation", leak_conj, 1e-14,
                        detail="conjugated amplitudes couple to |a> for complex field phases"))
    return checks


def _section3(cfg, rng):
    checks = []
    grid = [(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(20)]
    base = cfg.lambda_params()
    for kind in ChannelKind:
        rate = cfg.rates.get(kind.value, 0.1) if cfg.sweep == "delta" else 0.1
        r = rates_for_kind(kind, rate)
        worst = 0.0
        for d, D in grid:
            num = susceptibility(kind, d, D, base, r, cfg.kappa, "numeric")
            closed = chi_closed_form(kind, d, D, base, r, cfg.kappa)
            worst = max(worst, abs(num - closed) / abs(closed) if closed else abs(num))
        checks.append(Check(3, f"chi {kind.value}", worst, 1e-6))

    # Fixed reference point so the ledger values stay reproducible.
    ref = probe_params(omega_c=0.16, gamma=1.0)
    eta = 1e-6
    slope = dispersion_slope(ChannelKind.POPEX, ref, rates_for_kind(ChannelKind.POPEX, eta))
    coeff = (2 / slope - 0.16**2) / eta
    checks.append(Check(3, "popex-slowdown-expansion", coeff - 1, 0.05, advisory=True,
                        detail=f"first-order coefficient {coeff:.5g}, closed form 1"))

    r = rates_for_kind(ChannelKind.DAMP_CB, 0.1)
    even = susceptibility(ChannelKind.DAMP_CB, 0, 0, ref, r)
    skew = susceptibility(ChannelKind.DAMP_CB, 0, 0, probe_params(omega_c=0.16, branching=0.8), r)
    checks.append(Check(3, "branching-ratio", abs(skew - even) / abs(even), 1e-6, advisory=True,
                        detail="chi with gamma_b/gamma = 0.8 vs 0.5; closed forms assume 0.5"))
    return checks


def _classify(checks, errata):
    for c in checks:
        if c.status:
            continue
        within = abs(c.measured) <= c.tolerance
        entry = errata.get(c.name)
        if entry is not None and entry.get("component") not in LEDGER_COMPONENTS:
            c.status = "FAIL"
            c.detail = (c.detail + f"; ledger entry for component {entry.get('component')!r} not allowed").lstrip("; ")
        elif entry is None:
            c.status = "pass" if within else ("info" if c.advisory else "FAIL")
        elif within:
            c.status = "pass"
            c.detail = (c.detail + "; listed in erratum ledger but now within tolerance").lstrip("; ")
        elif abs(c.measured - entry["expected"]) <= entry["match_tol"]:
            c.status = "known"
        else:
            c.status = "FAIL"
            c.detail = (c.detail + f"; ledger expects {entry['expected']!r}").lstrip("; ")


def run_verify(cfg: ScenarioConfig | None = None, seed: int = 12345) -> VerifyReport:
    cfg = cfg or ScenarioConfig()
    rng = np.random.default_rng(seed)
    checks = _section1(cfg, rng) + _section2(cfg, rng) + _section3(cfg, rng)
    _classify(checks, load_errata())
    return VerifyReport(checks)

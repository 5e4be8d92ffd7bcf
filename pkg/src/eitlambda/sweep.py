"""
Configuration-driven parameter sweeps written as CSV.

A scenario is a flat TOML file with one nested ``[rates]`` table::

    gamma = 1.0
    omega_c = 0.16
    Delta = 0.0
    channels = ["ideal", "dephase", "depol", "damp_bc", "damp_cb", "popex"]
    sweep = "delta"            # or "control"
    sweep_min = -0.5
    sweep_max = 0.5
    sweep_count = 1001
    output = "eit_delta.csv"

    [rates]
    dephase = 0.1              # one rate per channel kind
    depol = 0.1
    damp_bc = 0.1
    damp_cb = 0.1
    popex = 0.1
    normalize_eta_z = 0.01     # control sweeps use matched slow-down rates

Delta sweeps write ``delta, re_chi_<kind>, im_chi_<kind>, ...``; control
sweeps write ``omega_c, ng_integrand_<kind>, alpha_<kind>, ...`` at fixed
``delta`` and ``Delta``. Values are printed with 12 significant digits;
points where the model is singular or a closed form has a pole are written
as ``nan`` and logged.

Without a config file every kind runs at rate 0.1. A ``[rates]`` table
replaces these defaults as a whole.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from functools import partial
from pathlib import Path

import numpy as np

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .errors import ConfigError, EITError, PoleError, SingularEvolutionError, StencilError
from .lambda_model import ChannelRates, LambdaParams
from .response import (
    PROBE_FRACTION,
    ChannelKind,
    absorption,
    dispersion_slope,
    normalized_rates,
    rates_for_kind,
    susceptibility,
)

log = logging.getLogger(__name__)

__all__ = ["ScenarioConfig", "load_config", "sweep_grid", "sweep_table", "format_csv", "run_sweep"]

_FLOAT_FMT = "{:.12g}"
_SKIPPED = (PoleError, SingularEvolutionError, StencilError)
DEFAULT_RATES = {"dephase": 0.1, "depol": 0.1, "damp_bc": 0.1, "damp_cb": 0.1, "popex": 0.1}


@dataclass(frozen=True)
class ScenarioConfig:
    gamma_b: float = 0.5
    gamma_c: float = 0.5
    omega_c: float = 0.16
    phi_c: float = 0.0
    omega_b: float | None = None  # defaults to probe_fraction * omega_c
    phi_b: float = 0.0
    probe_fraction: float = PROBE_FRACTION
    delta: float = 0.0
    Delta: float = 0.0
    kappa: float = 1.0
    wavelength: float = 2 * math.pi
    channels: tuple = tuple(k.value for k in ChannelKind if k is not ChannelKind.GENERAL)
    method: str = "numeric"
    sweep: str = "delta"
    sweep_min: float = -0.5
    sweep_max: float = 0.5
    sweep_count: int = 1001
    output: str = "sweep.csv"
    rates: dict = field(default_factory=lambda: dict(DEFAULT_RATES))

    def __post_init__(self):
        if self.sweep not in ("delta", "control"):
            raise ConfigError(f"sweep must be 'delta' or 'control', got {self.sweep!r}")
        if int(self.sweep_count) != self.sweep_count or self.sweep_count < 2:
            raise ConfigError("sweep_count must be an integer >= 2")
        if not self.sweep_min < self.sweep_max:
            raise ConfigError("sweep_min must be smaller than sweep_max")
        if self.method not in ("numeric", "closed"):
            raise ConfigError(f"method must be 'numeric' or 'closed', got {self.method!r}")
        if self.gamma_b < 0 or self.gamma_c < 0 or self.gamma_b + self.gamma_c <= 0:
            raise ConfigError("decay rates must be nonnegative with positive sum")
        if not self.wavelength > 0:
            raise ConfigError("wavelength must be positive")
        if not self.channels:
            raise ConfigError("at least one channel kind is required")
        try:
            kinds = tuple(ChannelKind.parse(k).value for k in self.channels)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        object.__setattr__(self, "channels", kinds)
        for key, value in self.rates.items():
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
                raise ConfigError(f"rates.{key} must be a finite nonnegative number")
        if self.sweep == "control":
            if "normalize_eta_z" not in self.rates:
                raise ConfigError("control sweeps need rates.normalize_eta_z")
            if "general" in kinds:
                raise ConfigError("control sweeps use matched rates; 'general' has none")
            if self.sweep_min < 0:
                raise ConfigError("control-field sweep range must be nonnegative")

    @classmethod
    def from_mapping(cls, data: dict) -> "ScenarioConfig":
        data = dict(data)
        known = {f.name for f in fields(cls)}
        if "gamma" in data:
            gamma = float(data.pop("gamma"))
            branching = float(data.pop("branching", 0.5))
            data.setdefault("gamma_b", gamma * branching)
            data.setdefault("gamma_c", gamma * (1 - branching))
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
        if "channels" in data:
            ch = data["channels"]
            data["channels"] = tuple(ch.split(",") if isinstance(ch, str) else ch)
        return cls(**data)

    def with_overrides(self, **kw) -> "ScenarioConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        if "channels" in kw and isinstance(kw["channels"], str):
            kw["channels"] = tuple(c for c in kw["channels"].split(",") if c.strip())
        return replace(self, **kw)

    @property
    def gamma(self) -> float:
        return self.gamma_b + self.gamma_c

    def lambda_params(self, omega_c=None, delta=None) -> LambdaParams:
        oc = self.omega_c if omega_c is None else omega_c
        ob = self.probe_fraction * oc if self.omega_b is None else self.omega_b
        d = self.delta if delta is None else delta
        return LambdaParams(
            delta_b=self.Delta + d,
            delta_c=self.Delta - d,
            omega_b=ob * np.exp(1j * self.phi_b),
            omega_c=oc * np.exp(1j * self.phi_c),
            gamma_b=self.gamma_b,
            gamma_c=self.gamma_c,
        )

    def rates_for(self, kind) -> ChannelRates:
        kind = ChannelKind.parse(kind)
        if self.sweep == "control":
            return normalized_rates(self.rates["normalize_eta_z"])[kind]
        if kind is ChannelKind.IDEAL:
            return ChannelRates()
        if kind.value not in self.rates:
            raise ConfigError(f"no rate given for channel {kind.value!r} (rates.{kind.value})")
        return rates_for_kind(kind, self.rates[kind.value])


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    return ScenarioConfig.from_mapping(data)


def sweep_grid(cfg: ScenarioConfig) -> np.ndarray:
    grid = np.linspace(cfg.sweep_min, cfg.sweep_max, int(cfg.sweep_count))
    grid[np.abs(grid) < 1e-12 * (cfg.sweep_max - cfg.sweep_min)] = 0.0
    return grid


def _delta_row(cfg: ScenarioConfig, delta: float) -> list:
    row = [delta]
    p = cfg.lambda_params(delta=delta)
    for kind in cfg.channels:
        try:
            chi = susceptibility(kind, delta, cfg.Delta, p, cfg.rates_for(kind), cfg.kappa, cfg.method)
        except _SKIPPED as exc:
            log.warning("delta=%g channel=%s: %s; writing nan", delta, kind, exc)
            chi = complex(math.nan, math.nan)
        row += [chi.real, chi.imag]
    return row


def _control_row(cfg: ScenarioConfig, omega_c: float) -> list:
    row = [omega_c]
    p = cfg.lambda_params(omega_c=omega_c)
    for kind in cfg.channels:
        r = cfg.rates_for(kind)
        try:
            slope = dispersion_slope(kind, p, r, kappa=cfg.kappa, method=cfg.method)
            chi = susceptibility(kind, p.delta, p.Delta, p, r, cfg.kappa, cfg.method)
            alpha = absorption(chi, cfg.wavelength)
        except _SKIPPED + (EITError,) as exc:
            log.warning("omega_c=%g channel=%s: %s; writing nan", omega_c, kind, exc)
            slope = alpha = math.nan
        row += [slope, alpha]
    return row


def sweep_table(cfg: ScenarioConfig, jobs: int = 1):
    """Return ``(header, rows)`` for the configured sweep."""
    grid = sweep_grid(cfg)
    if cfg.sweep == "delta":
        header = ["delta"] + [f"{q}_{k}" for k in cfg.channels for q in ("re_chi", "im_chi")]
        worker = partial(_delta_row, cfg)
    else:
        header = ["omega_c"] + [f"{q}_{k}" for k in cfg.channels for q in ("ng_integrand", "alpha")]
        worker = partial(_control_row, cfg)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(worker, grid.tolist(), chunksize=max(1, len(grid) // (4 * jobs))))
    else:
        rows = [worker(v) for v in grid.tolist()]
    return header, rows


def _metadata(cfg: ScenarioConfig) -> list[str]:
    from . import __version__

    lines = [f"eitlambda {__version__}"]
    for key, value in sorted(asdict(cfg).items()):
        if key == "rates":
            lines += [f"rates.{k} = {v!r}" for k, v in sorted(value.items())]
        elif key != "output":
            lines.append(f"{key} = {value!r}")
    return lines


def format_csv(cfg: ScenarioConfig, header, rows) -> str:
    buf = io.StringIO()
    for line in _metadata(cfg):
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_FLOAT_FMT.format(v) for v in row])
    return buf.getvalue()


def run_sweep(cfg: ScenarioConfig, output=None, jobs: int = 1) -> Path:
    """Evaluate the sweep and write it to ``output`` (default: ``cfg.output``)."""
    path = Path(output or cfg.output)
    header, rows = sweep_table(cfg, jobs)
    text = format_csv(cfg, header, rows)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from exc
    return path

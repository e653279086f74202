"""Experiment configuration: flat key=value files with per-key defaults.

Every key has a default mirroring the reference setup (15 GHz feed, guide
index 1.4, receiver at (15, 0, 0) with the guide at height 3 m, 30 m guide),
so an empty or absent file is a valid configuration.  Angles are configured
in degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable

from .channel import FreeSpace, Geometry, PowerLaw, PathlossModel, wavelength
from .errors import ConfigError
from .optimize import POSITION_FIXED, POSITION_OPTIMIZED, ProblemSpec

KNOWN_MODELS = ("ideal", "dc", "baseline")


@dataclass(frozen=True)
class ExperimentConfig:
    frequency_hz: float = 15e9
    n_g: float = 1.4
    y_g: float = 0.0
    z_g: float = 3.0
    receiver_x: float = 15.0
    receiver_y: float = 0.0
    receiver_z: float = 0.0
    x_max: float = 30.0
    dx_min: float = 0.5
    n_list: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8)
    models: tuple[str, ...] = ("ideal", "dc", "baseline")
    varphi_deg: float = 45.0
    position_mode: str = POSITION_OPTIMIZED
    pathloss: str = "freespace"
    c0_db: float = -28.0
    d0: float = 1.0
    alpha: float = 1.0
    restarts: int = 100
    seed: int = 0
    kappa_grid: int = 201
    gamma_t: complex = 0j
    gamma_r: complex = 0j
    gamma_l: complex = 0j
    h_rr: complex = 0j
    h_tt: complex = 0j

    @property
    def lam(self) -> float:
        return wavelength(self.frequency_hz)

    @property
    def beta_g(self) -> float:
        return 2.0 * math.pi * self.n_g / self.lam

    @property
    def varphi(self) -> float:
        return math.radians(self.varphi_deg)

    def geometry(self) -> Geometry:
        return Geometry(
            y_g=self.y_g,
            z_g=self.z_g,
            receiver=(self.receiver_x, self.receiver_y, self.receiver_z),
            x_max=self.x_max,
        )

    def pathloss_model(self) -> PathlossModel:
        if self.pathloss == "freespace":
            return FreeSpace()
        return PowerLaw(c0=10.0 ** (self.c0_db / 10.0), d0=self.d0, alpha=self.alpha)

    def problem_spec(self, n: int) -> ProblemSpec:
        return ProblemSpec(
            n=n,
            dx_min=self.dx_min,
            geom=self.geometry(),
            lam=self.lam,
            n_g=self.n_g,
            varphi=self.varphi,
            model=self.pathloss_model(),
            position_mode=self.position_mode,
        )

    def header_line(self) -> str:
        """Full resolved configuration on one comment-friendly line."""
        parts = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(str(v) for v in value)
            parts.append(f"{f.name}={value}")
        return " ".join(parts)


def _parse_value(field_name: str, field_type: type, raw: str):
    raw = raw.strip()
    try:
        if field_type is float:
            return float(raw)
        if field_type is int:
            return int(raw)
        if field_type is complex:
            return complex(raw.replace(" ", ""))
    except ValueError:
        raise ConfigError(field_name, f"cannot parse {raw!r}") from None
    return raw


def _validate(cfg: ExperimentConfig) -> ExperimentConfig:
    positives = ("frequency_hz", "n_g", "x_max", "dx_min", "d0", "alpha")
    for name in positives:
        if getattr(cfg, name) <= 0:
            raise ConfigError(name, "must be > 0")
    if not cfg.n_list:
        raise ConfigError("n_list", "must be nonempty")
    if any(n < 1 for n in cfg.n_list):
        raise ConfigError("n_list", "entries must be >= 1")
    for m in cfg.models:
        if m not in KNOWN_MODELS:
            raise ConfigError("models", f"unknown model {m!r}")
    if not cfg.models:
        raise ConfigError("models", "must be nonempty")
    if cfg.position_mode not in (POSITION_OPTIMIZED, POSITION_FIXED):
        raise ConfigError("position_mode", "must be one of optimized, fixed")
    if cfg.pathloss not in ("freespace", "powerlaw"):
        raise ConfigError("pathloss", "must be freespace or powerlaw")
    if not 0.0 < cfg.varphi_deg < 180.0:
        raise ConfigError("varphi_deg", "must lie in (0, 180)")
    if cfg.restarts < 1:
        raise ConfigError("restarts", "must be >= 1")
    if cfg.kappa_grid < 2:
        raise ConfigError("kappa_grid", "must be >= 2")
    for name in ("gamma_t", "gamma_r", "gamma_l"):
        if abs(getattr(cfg, name)) > 1.0:
            raise ConfigError(name, "reflection magnitude must be <= 1")
    try:
        cfg.geometry()
    except ValueError as err:
        raise ConfigError("receiver", str(err)) from None
    return cfg


def parse_config_text(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment; blanks ignored."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}", f"expected key = value, got {line!r}")
        key, _, value = stripped.partition("=")
        mapping[key.strip()] = value.strip()
    return mapping


def config_from_mapping(mapping: dict[str, str]) -> ExperimentConfig:
    known = {f.name: f for f in fields(ExperimentConfig)}
    values = {}
    for key, raw in mapping.items():
        if key not in known:
            raise ConfigError(key, "unknown key")
        if key == "n_list":
            try:
                values[key] = tuple(int(tok) for tok in raw.split(",") if tok.strip())
            except ValueError:
                raise ConfigError(key, f"cannot parse {raw!r} as integers") from None
        elif key == "models":
            values[key] = tuple(tok.strip() for tok in raw.split(",") if tok.strip())
        elif key in ("position_mode", "pathloss"):
            values[key] = raw.strip()
        else:
            default = getattr(ExperimentConfig, key)
            values[key] = _parse_value(key, type(default), raw)
    return _validate(ExperimentConfig(**values))


def load_config(path: str | Path | None, overrides: Iterable[str] = ()) -> ExperimentConfig:
    """Read a config file (optional) and apply ``key=value`` overrides."""
    mapping: dict[str, str] = {}
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        mapping.update(parse_config_text(text))
    for item in overrides:
        if "=" not in item:
            raise ConfigError(item, "override must look like key=value")
        key, _, value = item.partition("=")
        mapping[key.strip()] = value.strip()
    return config_from_mapping(mapping)

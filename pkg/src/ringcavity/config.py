"""Scenario configuration: defaults, preset files, key-value parsing.

Configs are flat ``key = value`` text files with dotted keys, one entry per
line, ``#`` comments allowed.  Every key has a default below; unknown keys
are rejected with the offending key in the message, and the fully resolved
mapping (defaults included) is stamped into every output header so the
datasets are self-describing.
"""

from __future__ import annotations

import importlib.resources
import math
import numpy as np

from .entanglement import EntanglementScenario
from .field import FieldDistribution, coherent_distribution, fock_distribution
from .spatial import SpatialScenario

__all__ = [
    "DEFAULTS",
    "PRESETS",
    "resolve_config",
    "load_config_file",
    "build_field",
    "build_spatial_scenario",
    "build_entanglement_scenario",
    "linear_grid",
    "metadata_lines",
]

DEFAULTS = {
    "field.kind": "coherent",       # fock | coherent
    "field.n0": 0,
    "field.alpha": 10.0,
    "field.tail_tol": 1e-12,
    "spatial.a": 0.25,
    "spatial.d": 0.025,
    "spatial.lambda": 1.0,
    "spatial.recoil_sigma": 0.0,
    "entangle.gamma": math.pi / 4.0,
    "entangle.a": 1.0,
    "entangle.d": 0.01,
    "entangle.recoil_sigma": 0.5,
    "entangle.omega": 0.0,
    "entangle.case": 1,
    "factor.x_min": 0.0,
    "factor.x_max": 2.0,
    "factor.x_points": 201,
    "factor.t_min": 0.0,
    "factor.t_max": 5.0,
    "factor.t_points": 101,
    "density.x_min": -0.5,
    "density.x_max": 0.5,
    "density.x_points": 512,
    "density.time": 2.0,
    "wigner.p_points": 256,
    "wigner.p_span": 4.0,
    "wigner.time": 2.0,
    "concurrence.t_min": 0.0,
    "concurrence.t_max": 10.0,
    "concurrence.t_points": 501,
}

PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6")


def _parse_value(key: str, text: str):
    default = DEFAULTS[key]
    text = text.strip()
    try:
        if isinstance(default, str):
            return text
        if isinstance(default, int) and not isinstance(default, bool):
            return int(text)
        return float(text)
    except ValueError:
        raise ValueError(f"{key}: cannot parse value {text!r}") from None


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into a validated override mapping."""
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in DEFAULTS:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
        overrides[key] = _parse_value(key, value)
    return overrides


def load_config_file(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def _load_preset(name: str) -> dict:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    text = (
        importlib.resources.files("ringcavity")
        .joinpath("presets", f"{name}.cfg")
        .read_text(encoding="utf-8")
    )
    return parse_config_text(text)


def resolve_config(preset: str | None = None, config_path=None, overrides=()) -> dict:
    """Defaults, then preset, then config file, then ``key=value`` overrides."""
    cfg = dict(DEFAULTS)
    if preset:
        cfg.update(_load_preset(preset))
    if config_path:
        cfg.update(load_config_file(config_path))
    for item in overrides:
        if "=" not in item:
            raise ValueError(f"override {item!r} must have the form key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        if key not in DEFAULTS:
            raise ValueError(f"unknown config key {key!r}")
        cfg[key] = _parse_value(key, value)
    return cfg


def build_field(cfg: dict) -> FieldDistribution:
    kind = cfg["field.kind"]
    try:
        if kind == "fock":
            return fock_distribution(cfg["field.n0"])
        if kind == "coherent":
            return coherent_distribution(cfg["field.alpha"], cfg["field.tail_tol"])
    except ValueError as err:
        raise ValueError(f"field: {err}") from None
    raise ValueError(f"field.kind: expected 'fock' or 'coherent', got {kind!r}")


def build_spatial_scenario(cfg: dict) -> SpatialScenario:
    try:
        return SpatialScenario(
            a=cfg["spatial.a"],
            d=cfg["spatial.d"],
            lam=cfg["spatial.lambda"],
            recoil_sigma=cfg["spatial.recoil_sigma"],
        )
    except ValueError as err:
        raise ValueError(f"spatial: {err}") from None


def build_entanglement_scenario(cfg: dict) -> EntanglementScenario:
    try:
        return EntanglementScenario(
            gamma=cfg["entangle.gamma"],
            a=cfg["entangle.a"],
            d=cfg["entangle.d"],
            recoil_sigma=cfg["entangle.recoil_sigma"],
            omega=cfg["entangle.omega"],
        )
    except ValueError as err:
        raise ValueError(f"entangle: {err}") from None


def linear_grid(cfg: dict, prefix: str, axis: str) -> np.ndarray:
    """Uniform grid from ``<prefix>.<axis>_min/_max/_points`` keys."""
    points = cfg[f"{prefix}.{axis}_points"]
    if points < 1:
        raise ValueError(f"{prefix}.{axis}_points: empty grid (got {points})")
    lo = cfg[f"{prefix}.{axis}_min"]
    hi = cfg[f"{prefix}.{axis}_max"]
    if points > 1 and hi <= lo:
        raise ValueError(f"{prefix}.{axis}_max: must exceed {prefix}.{axis}_min")
    return np.linspace(lo, hi, points)


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def metadata_lines(cfg: dict, extra: dict | None = None) -> dict:
    """Resolved config (plus extras) as an ordered header mapping."""
    merged = {key: _format_value(value) for key, value in cfg.items()}
    for key, value in (extra or {}).items():
        merged[key] = _format_value(value)
    return dict(sorted(merged.items()))

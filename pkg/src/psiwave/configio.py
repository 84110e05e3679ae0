"""JSON configuration parsing shared by the boundary API and the render CLI.

The schema is strict: unknown keys are rejected so typos surface as
errors instead of silently falling back to defaults.  Field-level bounds
are enforced by the target dataclasses; this module reports which field
was at fault.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .engine import Engine, EngineConfig, EnvelopeParams, InitialState
from .errors import ConfigError
from .sim import Grid, Potential, make_grid, make_potential
from .sonify import StereoMode

_ENGINE_KEYS = {"sample_rate", "n", "dt", "sim_speed", "stereo_mode",
                "max_voices", "dc_removal", "master_gain"}
_ENVELOPE_KEYS = {"attack", "decay", "sustain", "release"}
_INITIAL_KEYS = {"center", "sigma", "momentum"}
_POTENTIAL_KEYS_BY_KIND = {
    "free": set(),
    "harmonic": {"strength", "center"},
    "barrier": {"height", "left", "right"},
    "well": {"depth_walls", "left", "right"},
    "custom": {"values"},
}


def _require_mapping(obj: Any, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object, got {type(obj).__name__}")
    return obj


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")


def parse_json(text: str) -> dict:
    """Parse a JSON document, reporting line and column on failure."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return _require_mapping(obj, "config root")


def parse_engine_config(obj: dict | None) -> EngineConfig:
    obj = _require_mapping(obj if obj is not None else {}, "engine")
    _reject_unknown(obj, _ENGINE_KEYS, "engine")
    try:
        return EngineConfig(**obj)
    except TypeError as exc:
        raise ConfigError(f"engine: {exc}") from exc


def parse_envelope(obj: dict | None) -> EnvelopeParams:
    obj = _require_mapping(obj if obj is not None else {}, "envelope")
    _reject_unknown(obj, _ENVELOPE_KEYS, "envelope")
    return EnvelopeParams(**obj)


def parse_initial(obj: dict | None) -> InitialState:
    obj = _require_mapping(obj if obj is not None else {}, "initial")
    _reject_unknown(obj, _INITIAL_KEYS, "initial")
    return InitialState(**obj)


def parse_potential(obj: dict | None, grid: Grid) -> Potential:
    if obj is None:
        return make_potential(grid, "harmonic", strength=1.0, center=float(np.pi))
    obj = _require_mapping(obj, "potential")
    kind = obj.get("kind")
    if kind not in _POTENTIAL_KEYS_BY_KIND:
        raise ConfigError(
            f"potential.kind must be one of {sorted(_POTENTIAL_KEYS_BY_KIND)}, got {kind!r}")
    _reject_unknown(obj, _POTENTIAL_KEYS_BY_KIND[kind] | {"kind"}, "potential")
    params = {k: v for k, v in obj.items() if k != "kind"}
    return make_potential(grid, kind, **params)


def build_engine(obj: dict) -> Engine:
    """Construct an Engine from the config object's engine-related sections.

    Root-level key validation is the caller's job; the boundary API and the
    render config allow different sets of extra keys.
    """
    config = parse_engine_config(obj.get("engine"))
    envelope = parse_envelope(obj.get("envelope"))
    initial = parse_initial(obj.get("initial"))
    grid = make_grid(config.n)
    potential = parse_potential(obj.get("potential"), grid)
    return Engine(config, envelope, initial, potential)


def stereo_mode_name(mode: StereoMode) -> str:
    return mode.name.lower()

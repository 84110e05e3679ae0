"""Flat, handle-based surface consumed by foreign callers.

This is the contract the offline renderer and the browser playground both
sit on: create an engine from a JSON config string, drive it with note
events and float-valued parameter changes, pull interleaved 32-bit float
stereo blocks, and read (density, potential) snapshots for display.

All calls are expected from a single foreign caller thread per handle.
"""

from __future__ import annotations

import itertools

import numpy as np

from .configio import _reject_unknown, build_engine, parse_json
from .errors import DomainError

_engines: dict[int, object] = {}
_next_handle = itertools.count(1)

_ROOT_KEYS = {"engine", "envelope", "initial", "potential"}


def engine_create(config_json: str) -> int:
    """Create an engine from a JSON config string and return its handle."""
    obj = parse_json(config_json)
    _reject_unknown(obj, _ROOT_KEYS, "config root")
    engine = build_engine(obj)
    handle = next(_next_handle)
    _engines[handle] = engine
    return handle


def _engine(handle: int):
    try:
        return _engines[handle]
    except KeyError:
        raise DomainError(f"unknown engine handle {handle}") from None


def engine_note_on(handle: int, note: int, velocity: int) -> None:
    _engine(handle).note_on(note, velocity)


def engine_note_off(handle: int, note: int) -> None:
    _engine(handle).note_off(note)


def engine_set_param(handle: int, param_id: str, value: float) -> bool:
    return _engine(handle).set_parameter(param_id, value)


def engine_process(handle: int, num_frames: int) -> np.ndarray:
    """Render a block and return interleaved stereo float32 (L, R, L, R, ...)."""
    left, right = _engine(handle).process_block(num_frames)
    out = np.empty(2 * num_frames, dtype=np.float32)
    out[0::2] = left
    out[1::2] = right
    return out


def engine_visual_frame(handle: int) -> tuple[np.ndarray, np.ndarray]:
    """Current (density, potential) snapshot as float64 arrays."""
    return _engine(handle).get_visual_frame()


def engine_param_bounds(handle: int) -> dict[str, tuple[float, float]]:
    """Published control-bus bounds; the single source of truth for UIs."""
    return dict(_engine(handle).param_bounds)


def engine_destroy(handle: int) -> None:
    _engines.pop(handle, None)

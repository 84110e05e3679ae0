"""Offline deterministic rendering: JSON config in, WAV bytes out.

The renderer drives the engine in fixed 512-frame blocks and injects note
events at sample-accurate offsets (start times rounded to the nearest
sample), so the output is a pure function of the config text.  An
optional frame dump writes the tracked voice's density rows for analysis
and golden-file comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .configio import (
    _reject_unknown,
    _require_mapping,
    build_engine,
    parse_engine_config,
    parse_envelope,
    parse_initial,
    parse_json,
    parse_potential,
)
from .engine import Engine
from .errors import ConfigError
from .sim import Propagator, gaussian_initial, make_grid
from .wavio import FORMAT_FLOAT32, FORMAT_PCM16, WavSpec, write_wav

RENDER_BLOCK_FRAMES = 512

_ROOT_KEYS = {"engine", "envelope", "initial", "potential", "notes",
              "duration", "out_path", "format", "dump"}
_NOTE_KEYS = {"start", "duration", "note", "velocity"}
_DUMP_KEYS = {"path", "every_steps"}


@dataclass(frozen=True)
class NoteSpec:
    start: float
    duration: float
    note: int
    velocity: int = 127

    def __post_init__(self):
        if not (np.isfinite(self.start) and self.start >= 0):
            raise ConfigError(f"note start must be >= 0 seconds, got {self.start}")
        if not (np.isfinite(self.duration) and self.duration > 0):
            raise ConfigError(f"note duration must be positive, got {self.duration}")
        if not (isinstance(self.note, int) and 0 <= self.note <= 127):
            raise ConfigError(f"note number must be an integer in [0, 127], got {self.note}")
        if not (isinstance(self.velocity, int) and 1 <= self.velocity <= 127):
            raise ConfigError(f"velocity must be an integer in [1, 127], got {self.velocity}")

    @property
    def end(self) -> float:
        return self.start + self.duration


@dataclass(frozen=True)
class DumpSpec:
    path: str
    every_steps: int

    def __post_init__(self):
        if not (isinstance(self.every_steps, int) and self.every_steps >= 1):
            raise ConfigError(
                f"dump.every_steps must be an integer >= 1, got {self.every_steps}")


@dataclass
class RenderConfig:
    """Validated offline-render description."""

    sections: dict          # engine/envelope/initial/potential sub-objects
    notes: list[NoteSpec]
    duration: float
    out_path: str | None
    sample_format: str
    dump: DumpSpec | None

    def make_engine(self) -> Engine:
        return build_engine(self.sections)


def parse_config(text: str) -> RenderConfig:
    """Parse and validate a render config document."""
    obj = parse_json(text)
    _reject_unknown(obj, _ROOT_KEYS, "config root")

    # engine-side sections validate eagerly so errors name the bad field
    engine_config = parse_engine_config(obj.get("engine"))
    envelope = parse_envelope(obj.get("envelope"))
    parse_initial(obj.get("initial"))
    parse_potential(obj.get("potential"), make_grid(engine_config.n))
    sections = {key: obj.get(key) for key in ("engine", "envelope", "initial", "potential")}

    notes_obj = obj.get("notes", [])
    if not isinstance(notes_obj, list):
        raise ConfigError("notes must be an array")
    notes = []
    for i, entry in enumerate(notes_obj):
        entry = _require_mapping(entry, f"notes[{i}]")
        _reject_unknown(entry, _NOTE_KEYS, f"notes[{i}]")
        try:
            notes.append(NoteSpec(**entry))
        except TypeError as exc:
            raise ConfigError(f"notes[{i}]: {exc}") from exc
    notes.sort(key=lambda n: n.start)

    last_end = max((n.end for n in notes), default=0.0)
    required = last_end + envelope.release
    duration = obj.get("duration")
    if duration is None:
        if not notes:
            raise ConfigError("duration is required when there are no notes")
        duration = required
    if not (np.isfinite(duration) and duration > 0):
        raise ConfigError(f"duration must be positive seconds, got {duration}")
    if notes and duration < required:
        raise ConfigError(
            f"duration {duration} s does not cover the last note end plus "
            f"release ({required} s)")

    sample_format = obj.get("format", FORMAT_FLOAT32)
    if sample_format not in (FORMAT_FLOAT32, FORMAT_PCM16):
        raise ConfigError(
            f"format must be '{FORMAT_FLOAT32}' or '{FORMAT_PCM16}', got {sample_format!r}")

    dump_obj = obj.get("dump")
    dump = None
    if dump_obj is not None:
        dump_obj = _require_mapping(dump_obj, "dump")
        _reject_unknown(dump_obj, _DUMP_KEYS, "dump")
        if "path" not in dump_obj or "every_steps" not in dump_obj:
            raise ConfigError("dump requires both 'path' and 'every_steps'")
        dump = DumpSpec(path=str(dump_obj["path"]), every_steps=dump_obj["every_steps"])

    out_path = obj.get("out_path")
    if out_path is not None:
        out_path = str(out_path)

    return RenderConfig(sections=sections, notes=notes, duration=float(duration),
                        out_path=out_path, sample_format=sample_format, dump=dump)


def _note_events(config: RenderConfig, sample_rate: float):
    """Sample-indexed events, note-offs ordered before note-ons within a frame."""
    events = []
    for spec in config.notes:
        events.append((int(round(spec.start * sample_rate)), 1, "on", spec))
        events.append((int(round(spec.end * sample_rate)), 0, "off", spec))
    events.sort(key=lambda e: (e[0], e[1]))
    return events


class _DumpCollector:
    """Records the density of the first spawned voice every k-th timestep."""

    def __init__(self, every_steps: int):
        self.every_steps = every_steps
        self.rows: list[tuple[int, np.ndarray]] = []

    def __call__(self, slot_index: int, seq: int, step_index: int,
                 density: np.ndarray) -> None:
        if seq == 0 and step_index % self.every_steps == 0:
            self.rows.append((step_index, density))


def _frame_count(duration: float, sample_rate: float) -> int:
    """ceil(duration·sample_rate) as a real-number product.

    The float product can land a hair above the exact integer (2.2·48000
    rounds to 105600.00000000001); a relative-epsilon slack keeps such
    cases from gaining a spurious extra frame.
    """
    product = duration * sample_rate
    return math.ceil(product - 4.0 * np.finfo(np.float64).eps * product)


def render_frames(config: RenderConfig) -> tuple[np.ndarray, list[tuple[int, np.ndarray]], np.ndarray]:
    """Render to (frames[n, 2], dump rows, potential samples) without touching disk."""
    engine = config.make_engine()
    sample_rate = engine.config.sample_rate
    total_frames = _frame_count(config.duration, sample_rate)
    collector = _DumpCollector(config.dump.every_steps) if config.dump else None
    if collector is not None:
        engine.set_step_observer(collector)

    events = _note_events(config, sample_rate)
    next_event = 0
    out = np.zeros((total_frames, 2))
    block_start = 0
    while block_start < total_frames:
        block = min(RENDER_BLOCK_FRAMES, total_frames - block_start)
        while next_event < len(events) and events[next_event][0] < block_start + block:
            frame, _, kind, spec = events[next_event]
            offset = frame - block_start
            if kind == "on":
                engine.note_on(spec.note, spec.velocity, offset)
            else:
                engine.note_off(spec.note, offset)
            next_event += 1
        left, right = engine.process_block(block)
        out[block_start:block_start + block, 0] = left
        out[block_start:block_start + block, 1] = right
        block_start += block
    rows = collector.rows if collector else []
    return out, rows, engine.potential.v.copy()


def render_wav_bytes(config: RenderConfig) -> bytes:
    """Render and encode; byte-identical across runs for one config."""
    frames, _, _ = render_frames(config)
    spec = WavSpec(sample_rate=int(round(_config_sample_rate(config))),
                   sample_format=config.sample_format)
    return write_wav(spec, frames)


def _config_sample_rate(config: RenderConfig) -> float:
    return parse_engine_config(config.sections.get("engine")).sample_rate


def format_dump(potential: np.ndarray, rows: list[tuple[int, np.ndarray]]) -> str:
    """CSV text: potential row first (step −1), then one row per dumped step.

    Values are written with repr so they round-trip to the exact doubles.
    """
    lines = ["-1," + ",".join(repr(float(v)) for v in potential)]
    for step_index, density in rows:
        lines.append(str(step_index) + "," + ",".join(repr(float(v)) for v in density))
    return "\n".join(lines) + "\n"


def render_to_files(config: RenderConfig, out_path: str | None = None,
                    dump_path: str | None = None, every_steps: int | None = None) -> str:
    """Render to the WAV (and optional dump) files; returns the WAV path."""
    if dump_path is not None:
        config.dump = DumpSpec(path=dump_path, every_steps=every_steps or 1)
    target = out_path or config.out_path
    if target is None:
        raise ConfigError("no output path: set out_path in the config or pass --out")

    frames, rows, potential = render_frames(config)
    spec = WavSpec(sample_rate=int(round(_config_sample_rate(config))),
                   sample_format=config.sample_format)
    data = write_wav(spec, frames)
    _write_bytes(target, data)
    if config.dump is not None:
        _write_text(config.dump.path, format_dump(potential, rows))
    return target


def simulate_to_file(config: RenderConfig, steps: int, dump_path: str,
                     every_steps: int = 1) -> None:
    """Physics-only run: evolve the configured state and dump density rows."""
    if steps < 0:
        raise ConfigError(f"steps must be >= 0, got {steps}")
    if every_steps < 1:
        raise ConfigError(f"every must be >= 1, got {every_steps}")
    engine_config = parse_engine_config(config.sections.get("engine"))
    initial = parse_initial(config.sections.get("initial"))
    grid = make_grid(engine_config.n)
    potential = parse_potential(config.sections.get("potential"), grid)
    psi = gaussian_initial(grid, initial.center, initial.sigma, initial.momentum)
    propagator = Propagator(grid, potential, engine_config.dt)
    rows = []
    amp = psi.amp.copy()
    for i in range(1, steps + 1):
        propagator.step_into(amp)
        if i % every_steps == 0:
            rows.append((i, amp.real ** 2 + amp.imag ** 2))
    _write_text(dump_path, format_dump(potential.v, rows))


def _write_bytes(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc

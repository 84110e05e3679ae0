"""Polyphonic voice engine.

Each note-on starts a fresh simulation from the current initial-state
settings; the voice's density is rebuilt into wavetables once per audio
block while a phase accumulator resamples them at the note's pitch under
a linear ADSR envelope.  Voices are summed in fixed slot order, so the
whole engine is a deterministic function of (config, event schedule):
identical inputs give bit-identical output buffers.

Control traffic (note events, parameter changes) goes through a bounded
single-producer/single-consumer message channel drained at the start of
each block; the visual snapshot crosses the other way.  All per-voice
buffers are preallocated at construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, DomainError
from .sim import (
    TWO_PI,
    Grid,
    Potential,
    Propagator,
    gaussian_initial,
    make_grid,
    make_potential,
)
from .sonify import StereoMode, pan_gains, stereo_weights

MAX_BLOCK_FRAMES = 8192
SAMPLE_RATE_RANGE = (22050.0, 192000.0)

#: Parameter ids accepted by the control bus, with inclusive bounds.
#: gaussian_momentum is added per engine (its bound scales with grid size).
_STATIC_PARAM_BOUNDS = {
    "sim_speed": (0.0, 1.0e6),
    "dt": (1.0e-6, 1.0),
    "stereo_mode": (0.0, 2.0),
    "dc_removal": (0.0, 1.0),
    "master_gain": (0.0, 2.0),
    "attack": (0.0, 60.0),
    "decay": (0.0, 60.0),
    "sustain": (0.0, 1.0),
    "release": (0.0, 60.0),
    "gaussian_center": (0.0, TWO_PI),   # right-exclusive
    "gaussian_sigma": (1.0e-3, 3.0),
    "potential_kind": (0.0, 3.0),
    "potential_p1": (0.0, 1.0e4),
    "potential_p2": (0.0, TWO_PI),
    "potential_p3": (0.0, TWO_PI),
}

_POTENTIAL_KIND_CODES = {0: "free", 1: "harmonic", 2: "barrier", 3: "well"}


def midi_to_freq(note_number: int) -> float:
    """12-TET frequency of a MIDI note number: 440·2^((m−69)/12)."""
    if not isinstance(note_number, (int, np.integer)) or isinstance(note_number, bool):
        raise DomainError(f"note number must be an integer, got {note_number!r}")
    if not 0 <= note_number <= 127:
        raise DomainError(f"note number must be in [0, 127], got {note_number}")
    return 440.0 * 2.0 ** ((int(note_number) - 69) / 12)


@dataclass
class EnvelopeParams:
    """Linear ADSR segment description, times in seconds."""

    attack: float = 0.01
    decay: float = 0.1
    sustain: float = 0.8
    release: float = 0.2

    def __post_init__(self):
        for name in ("attack", "decay", "release"):
            t = getattr(self, name)
            if not (np.isfinite(t) and t >= 0):
                raise ConfigError(f"envelope {name} must be >= 0 seconds, got {t}")
        if not (np.isfinite(self.sustain) and 0.0 <= self.sustain <= 1.0):
            raise ConfigError(f"envelope sustain must be in [0, 1], got {self.sustain}")


def _held_level(env: EnvelopeParams, t: float) -> float:
    if t < 0:
        return 0.0
    if env.attack > 0 and t < env.attack:
        return t / env.attack
    t_decay = t - env.attack
    if env.decay > 0 and t_decay < env.decay:
        return 1.0 - (1.0 - env.sustain) * (t_decay / env.decay)
    return env.sustain


def envelope_level(env: EnvelopeParams, t: float, released_at: float | None = None) -> float:
    """Envelope value at time t seconds after note-on.

    `released_at` is the note-off time on the same clock; the release ramp
    runs linearly from the level held at that moment down to zero.
    Zero-length segments jump instantly.
    """
    if not np.isfinite(t) or t < 0:
        raise DomainError(f"envelope time must be finite and >= 0, got {t}")
    if released_at is not None and t >= released_at:
        level_at_release = _held_level(env, released_at)
        if env.release <= 0:
            return 0.0
        return max(0.0, level_at_release * (1.0 - (t - released_at) / env.release))
    return _held_level(env, t)


def _envelope_block(env: EnvelopeParams, t: np.ndarray,
                    released_at: float | None) -> np.ndarray:
    # vectorized twin of envelope_level; same expressions, same rounding
    level = np.full_like(t, env.sustain)
    if env.decay > 0:
        t_decay = t - env.attack
        level = np.where(t_decay < env.decay,
                         1.0 - (1.0 - env.sustain) * (t_decay / env.decay), level)
    if env.attack > 0:
        level = np.where(t < env.attack, t / env.attack, level)
    if released_at is None:
        return level
    level_at_release = _held_level(env, released_at)
    if env.release <= 0:
        released_level = np.zeros_like(t)
    else:
        released_level = np.maximum(
            0.0, level_at_release * (1.0 - (t - released_at) / env.release))
    return np.where(t >= released_at, released_level, level)


@dataclass
class InitialState:
    """Gaussian packet settings used for every newly spawned voice."""

    center: float = np.pi
    sigma: float = 0.4
    momentum: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.center) and 0.0 <= self.center < TWO_PI):
            raise ConfigError(f"gaussian center must be in [0, 2π), got {self.center}")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ConfigError(f"gaussian sigma must be positive, got {self.sigma}")
        if not np.isfinite(self.momentum):
            raise ConfigError(f"gaussian momentum must be finite, got {self.momentum}")


@dataclass
class EngineConfig:
    sample_rate: float = 48000.0
    n: int = 128
    dt: float = 1.0e-3
    sim_speed: float = 2000.0
    stereo_mode: StereoMode = StereoMode.WEIGHTED
    max_voices: int = 16
    dc_removal: bool = True
    master_gain: float = 0.5

    def __post_init__(self):
        lo, hi = SAMPLE_RATE_RANGE
        if not (np.isfinite(self.sample_rate) and lo <= self.sample_rate <= hi):
            raise ConfigError(
                f"sample_rate must be in [{lo:g}, {hi:g}] Hz, got {self.sample_rate}")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise ConfigError(f"dt must be positive and finite, got {self.dt}")
        if not (np.isfinite(self.sim_speed) and self.sim_speed >= 0):
            raise ConfigError(f"sim_speed must be >= 0, got {self.sim_speed}")
        self.stereo_mode = StereoMode.parse(self.stereo_mode)
        if not (isinstance(self.max_voices, (int, np.integer)) and self.max_voices >= 1):
            raise ConfigError(f"max_voices must be a positive integer, got {self.max_voices}")
        if not (np.isfinite(self.master_gain) and 0.0 <= self.master_gain <= 2.0):
            raise ConfigError(f"master_gain must be in [0, 2], got {self.master_gain}")
        self.dc_removal = bool(self.dc_removal)


@dataclass(frozen=True)
class NoteEvent:
    """A note transition at a sample offset within the upcoming block."""

    kind: str  # "on" | "off"
    note_number: int
    velocity: int = 127
    sample_offset: int = 0

    def __post_init__(self):
        if self.kind not in ("on", "off"):
            raise DomainError(f"note event kind must be 'on' or 'off', got {self.kind!r}")
        if not 0 <= self.note_number <= 127:
            raise DomainError(f"note number must be in [0, 127], got {self.note_number}")
        if self.kind == "on" and not 1 <= self.velocity <= 127:
            raise DomainError(f"velocity must be in [1, 127], got {self.velocity}")
        if self.sample_offset < 0:
            raise DomainError(f"sample offset must be >= 0, got {self.sample_offset}")


class MessageChannel:
    """Bounded FIFO between the control context and the render context.

    Single producer, single consumer; `push` never blocks and reports
    refusal instead of growing without bound.
    """

    def __init__(self, capacity: int = 1024):
        self._queue: deque = deque()
        self.capacity = capacity
        self.dropped = 0

    def push(self, message) -> bool:
        if len(self._queue) >= self.capacity:
            self.dropped += 1
            return False
        self._queue.append(message)
        return True

    def drain(self):
        while self._queue:
            yield self._queue.popleft()


class _Voice:
    """One voice slot; buffers are allocated once and reused across notes."""

    __slots__ = (
        "amp", "density", "table_l", "table_r", "active", "note", "freq",
        "phase_inc", "velocity_gain", "phase", "age", "release_at_age",
        "start_offset", "owed_steps", "steps_done", "seq", "gain_l", "gain_r",
    )

    def __init__(self, n: int):
        self.amp = np.zeros(n, dtype=np.complex128)
        self.density = np.zeros(n, dtype=np.float64)
        self.table_l = np.zeros(n, dtype=np.float64)
        self.table_r = np.zeros(n, dtype=np.float64)
        self.active = False
        self.note = -1
        self.freq = 0.0
        self.phase_inc = 0.0
        self.velocity_gain = 0.0
        self.phase = 0.0
        self.age = 0
        self.release_at_age: int | None = None
        self.start_offset = 0
        self.owed_steps = 0.0
        self.steps_done = 0
        self.seq = -1
        self.gain_l = 1.0
        self.gain_r = 1.0

    def held(self) -> bool:
        return self.active and self.release_at_age is None


class Engine:
    """Deterministic polyphonic renderer over per-note simulations."""

    def __init__(self, config: EngineConfig, envelope: EnvelopeParams | None = None,
                 initial: InitialState | None = None,
                 potential: Potential | None = None):
        self.config = replace(config)
        self.envelope = replace(envelope) if envelope else EnvelopeParams()
        self.initial = replace(initial) if initial else InitialState()
        self.grid: Grid = make_grid(self.config.n)
        if potential is None:
            potential = make_potential(self.grid, "harmonic",
                                       strength=1.0, center=np.pi)
        elif potential.grid.n != self.grid.n:
            raise ConfigError(
                f"potential grid n={potential.grid.n} does not match engine n={self.grid.n}")
        self.potential = potential
        self._potential_staging = self._params_from_potential(potential)

        self.weights = stereo_weights(self.grid.n)
        self.channel = MessageChannel()
        self.diagnostics = {
            "ignored_note_offs": 0,
            "rejected_params": 0,
            "rejected_notes": 0,
            "stolen_voices": 0,
        }
        self._voices = [_Voice(self.grid.n) for _ in range(self.config.max_voices)]
        self._spawn_seq = 0
        self._propagator = Propagator(self.grid, self.potential, self.config.dt)
        self._propagator_dirty = False
        self._step_observer = None

        n = self.grid.n
        self._batch_amp = np.empty((self.config.max_voices, n), dtype=np.complex128)
        self._mix_l = np.zeros(MAX_BLOCK_FRAMES)
        self._mix_r = np.zeros(MAX_BLOCK_FRAMES)
        self._ramp = np.arange(1, MAX_BLOCK_FRAMES + 1, dtype=np.float64)
        self._phase_buf = np.empty(MAX_BLOCK_FRAMES)
        self._frac_buf = np.empty(MAX_BLOCK_FRAMES)
        self._idx_buf = np.empty(MAX_BLOCK_FRAMES, dtype=np.int64)
        self._idx1_buf = np.empty(MAX_BLOCK_FRAMES, dtype=np.int64)
        self._val0_buf = np.empty(MAX_BLOCK_FRAMES)
        self._val1_buf = np.empty(MAX_BLOCK_FRAMES)
        self._sig_l = np.empty(MAX_BLOCK_FRAMES)
        self._sig_r = np.empty(MAX_BLOCK_FRAMES)
        self._dens_scratch = np.empty(n)
        self._table_scratch = np.empty(n)
        self._snapshot = self._preview_frame()

    # ------------------------------------------------------------------
    # control context
    # ------------------------------------------------------------------

    def note_on(self, note_number: int, velocity: int = 127,
                sample_offset: int = 0) -> None:
        """Queue a note-on for the next block."""
        event = NoteEvent("on", note_number, velocity, sample_offset)
        self.channel.push(("on", event.note_number, event.velocity, event.sample_offset))

    def note_off(self, note_number: int, sample_offset: int = 0) -> None:
        """Queue a note-off for the next block."""
        event = NoteEvent("off", note_number, 127, sample_offset)
        self.channel.push(("off", event.note_number, event.sample_offset))

    @property
    def param_bounds(self) -> dict[str, tuple[float, float]]:
        """Inclusive control-bus bounds (gaussian_center is right-exclusive)."""
        bounds = dict(_STATIC_PARAM_BOUNDS)
        half_n = self.grid.n / 2.0
        bounds["gaussian_momentum"] = (-half_n, half_n)
        return bounds

    def set_parameter(self, param_id: str, value) -> bool:
        """Queue a parameter change; False (plus a diagnostic) on bad input."""
        bounds = self.param_bounds
        if param_id not in bounds:
            self.diagnostics["rejected_params"] += 1
            return False
        if param_id == "stereo_mode":
            try:
                value = StereoMode.parse(value)
            except DomainError:
                self.diagnostics["rejected_params"] += 1
                return False
        else:
            try:
                value = float(value)
            except (TypeError, ValueError):
                self.diagnostics["rejected_params"] += 1
                return False
            lo, hi = bounds[param_id]
            inside = lo <= value <= hi and np.isfinite(value)
            if param_id == "gaussian_center":
                inside = lo <= value < hi
            if not inside:
                self.diagnostics["rejected_params"] += 1
                return False
        self.channel.push(("param", param_id, value))
        return True

    def get_visual_frame(self, voice: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Copy of (density, potential) for display; preview when no voice sounds."""
        if voice is not None:
            if not 0 <= voice < len(self._voices):
                raise DomainError(f"voice index out of range: {voice}")
            slot = self._voices[voice]
            if not slot.active:
                return self._preview_frame()
            density = slot.amp.real ** 2 + slot.amp.imag ** 2
            return density, self.potential.v.copy()
        density, potential = self._snapshot
        return density.copy(), potential.copy()

    def set_step_observer(self, callback) -> None:
        """Register callback(slot_index, spawn_seq, step_index, density) fired per timestep."""
        self._step_observer = callback

    @property
    def active_voice_count(self) -> int:
        return sum(1 for v in self._voices if v.active)

    # ------------------------------------------------------------------
    # render context
    # ------------------------------------------------------------------

    def process_block(self, num_frames: int) -> tuple[np.ndarray, np.ndarray]:
        """Render one stereo block; events queued so far apply at its start."""
        if not 1 <= num_frames <= MAX_BLOCK_FRAMES:
            raise DomainError(
                f"block size must be in [1, {MAX_BLOCK_FRAMES}], got {num_frames}")
        self._apply_messages(num_frames)
        if self._propagator_dirty:
            self._propagator = Propagator(self.grid, self.potential, self.config.dt)
            self._propagator_dirty = False

        mix_l = self._mix_l[:num_frames]
        mix_r = self._mix_r[:num_frames]
        mix_l.fill(0.0)
        mix_r.fill(0.0)
        self._step_voices(num_frames)
        for voice in self._voices:
            if voice.active:
                self._render_voice(voice, num_frames, mix_l, mix_r)
        if self.config.master_gain != 1.0:
            mix_l *= self.config.master_gain
            mix_r *= self.config.master_gain
        self._publish_snapshot()
        return mix_l.copy(), mix_r.copy()

    # ------------------------------------------------------------------
    # internals
    # ------------------------------------------------------------------

    @staticmethod
    def _params_from_potential(potential: Potential) -> dict:
        kind_codes = {v: k for k, v in _POTENTIAL_KIND_CODES.items()}
        staging = {"kind": kind_codes.get(potential.kind, 1),
                   "p1": 1.0, "p2": np.pi, "p3": np.pi + 0.5}
        p = potential.params
        if potential.kind == "harmonic":
            staging.update(p1=p["strength"], p2=p["center"])
        elif potential.kind == "barrier":
            staging.update(p1=p["height"], p2=p["left"], p3=p["right"])
        elif potential.kind == "well":
            staging.update(p1=p["depth_walls"], p2=p["left"], p3=p["right"])
        return staging

    def _rebuild_potential(self) -> None:
        s = self._potential_staging
        kind = _POTENTIAL_KIND_CODES[int(s["kind"])]
        try:
            if kind == "free":
                new = make_potential(self.grid, "free")
            elif kind == "harmonic":
                new = make_potential(self.grid, "harmonic", strength=s["p1"], center=s["p2"])
            elif kind == "barrier":
                new = make_potential(self.grid, "barrier", height=s["p1"],
                                     left=s["p2"], right=s["p3"])
            else:
                new = make_potential(self.grid, "well", depth_walls=s["p1"],
                                     left=s["p2"], right=s["p3"])
        except DomainError:
            self.diagnostics["rejected_params"] += 1
            self._potential_staging = self._params_from_potential(self.potential)
            return
        self.potential = new
        self._propagator_dirty = True

    def _apply_messages(self, num_frames: int) -> None:
        potential_touched = False
        for message in self.channel.drain():
            kind = message[0]
            if kind == "on":
                _, note, velocity, offset = message
                self._spawn_voice(note, velocity, min(offset, num_frames - 1))
            elif kind == "off":
                _, note, offset = message
                self._release_voice(note, min(offset, num_frames - 1))
            else:
                _, param_id, value = message
                if param_id.startswith("potential_"):
                    key = {"potential_kind": "kind", "potential_p1": "p1",
                           "potential_p2": "p2", "potential_p3": "p3"}[param_id]
                    self._potential_staging[key] = (
                        int(round(value)) if key == "kind" else value)
                    potential_touched = True
                else:
                    self._apply_scalar_param(param_id, value)
        if potential_touched:
            self._rebuild_potential()

    def _apply_scalar_param(self, param_id: str, value) -> None:
        if param_id == "sim_speed":
            self.config.sim_speed = value
        elif param_id == "dt":
            self.config.dt = value
            self._propagator_dirty = True
        elif param_id == "stereo_mode":
            self.config.stereo_mode = value
        elif param_id == "dc_removal":
            self.config.dc_removal = bool(round(value))
        elif param_id == "master_gain":
            self.config.master_gain = value
        elif param_id in ("attack", "decay", "sustain", "release"):
            setattr(self.envelope, param_id, value)
        elif param_id == "gaussian_center":
            self.initial.center = value
        elif param_id == "gaussian_sigma":
            self.initial.sigma = value
        elif param_id == "gaussian_momentum":
            self.initial.momentum = value

    def _select_slot(self) -> _Voice:
        for voice in self._voices:
            if not voice.active:
                return voice
        self.diagnostics["stolen_voices"] += 1
        releasing = [v for v in self._voices if v.release_at_age is not None]
        fs = self.config.sample_rate
        if releasing:
            # deepest into release = lowest current level; ties go to the oldest
            def depth(v: _Voice):
                level = envelope_level(self.envelope, v.age / fs,
                                       released_at=v.release_at_age / fs)
                return (level, v.seq)
            return min(releasing, key=depth)
        return min(self._voices, key=lambda v: v.seq)

    def _spawn_voice(self, note: int, velocity: int, offset: int) -> None:
        freq = midi_to_freq(note)
        if not freq < self.config.sample_rate / 2.0:
            self.diagnostics["rejected_notes"] += 1
            return
        voice = self._select_slot()
        packet = gaussian_initial(self.grid, self.initial.center,
                                  self.initial.sigma, self.initial.momentum)
        np.copyto(voice.amp, packet.amp)
        voice.active = True
        voice.note = note
        voice.freq = freq
        voice.phase_inc = self.grid.n * freq / self.config.sample_rate
        voice.velocity_gain = velocity / 127.0
        voice.phase = 0.0
        voice.age = 0
        voice.release_at_age = None
        voice.start_offset = offset
        voice.owed_steps = 0.0
        voice.steps_done = 0
        voice.seq = self._spawn_seq
        self._spawn_seq += 1

    def _release_voice(self, note: int, offset: int) -> None:
        held = [v for v in self._voices if v.held() and v.note == note]
        if not held:
            self.diagnostics["ignored_note_offs"] += 1
            return
        voice = max(held, key=lambda v: v.seq)  # most recent matching note
        voice.release_at_age = voice.age + max(0, offset - voice.start_offset)

    def _rebuild_tables(self, voice: _Voice) -> None:
        density = voice.density
        np.multiply(voice.amp.real, voice.amp.real, out=density)
        np.multiply(voice.amp.imag, voice.amp.imag, out=self._dens_scratch)
        density += self._dens_scratch

        mode = self.config.stereo_mode
        if mode is StereoMode.WEIGHTED:
            # exact-complement split: table_l + table_r == density bit-for-bit
            np.multiply(density, self.weights.right, out=self._table_scratch)
            np.subtract(density, self._table_scratch, out=voice.table_l)
            np.subtract(density, voice.table_l, out=voice.table_r)
            voice.gain_l = 1.0
            voice.gain_r = 1.0
            if self.config.dc_removal:
                voice.table_l -= voice.table_l.mean()
                voice.table_r -= voice.table_r.mean()
        else:
            if mode is StereoMode.PAN_VOLUME:
                voice.gain_l, voice.gain_r = pan_gains(density)
            else:
                voice.gain_l = 1.0
                voice.gain_r = 1.0
            np.copyto(voice.table_l, density)
            if self.config.dc_removal:
                voice.table_l -= voice.table_l.mean()
            np.copyto(voice.table_r, voice.table_l)

    def _step_voices(self, num_frames: int) -> None:
        """Advance every active simulation by the timesteps owed this block.

        Voices owing the same step count are stepped as one batched
        transform; the row-wise FFT is bit-identical to the per-voice one.
        """
        cfg = self.config
        if cfg.sim_speed <= 0:
            return
        pending: list[tuple[int, _Voice, int]] = []
        for slot_index, voice in enumerate(self._voices):
            if not voice.active:
                continue
            alive = num_frames - voice.start_offset
            if alive <= 0:
                continue
            voice.owed_steps += cfg.sim_speed * alive / cfg.sample_rate
            steps = int(voice.owed_steps)
            voice.owed_steps -= steps
            if steps > 0:
                pending.append((slot_index, voice, steps))
        if not pending:
            return

        if self._step_observer is not None:
            for slot_index, voice, steps in pending:
                for _ in range(steps):
                    self._propagator.step_into(voice.amp)
                    voice.steps_done += 1
                    density = voice.amp.real ** 2 + voice.amp.imag ** 2
                    self._step_observer(slot_index, voice.seq,
                                        voice.steps_done, density)
            return

        groups: dict[int, list[_Voice]] = {}
        for _, voice, steps in pending:
            groups.setdefault(steps, []).append(voice)
        pot_phase = self._propagator.potential_phase
        kin_phase = self._propagator.kinetic_phase
        for steps, voices in groups.items():
            if len(voices) == 1:
                voice = voices[0]
                for _ in range(steps):
                    self._propagator.step_into(voice.amp)
                voice.steps_done += steps
                continue
            work = self._batch_amp[:len(voices)]
            for row, voice in enumerate(voices):
                np.copyto(work[row], voice.amp)
            for _ in range(steps):
                np.multiply(pot_phase, work, out=work)
                spectrum = np.fft.fft(work, axis=1)
                np.multiply(kin_phase, spectrum, out=spectrum)
                np.copyto(work, np.fft.ifft(spectrum, axis=1))
            for row, voice in enumerate(voices):
                np.copyto(voice.amp, work[row])
                voice.steps_done += steps

    def _render_voice(self, voice: _Voice, num_frames: int,
                      mix_l: np.ndarray, mix_r: np.ndarray) -> None:
        start = voice.start_offset
        count = num_frames - start
        voice.start_offset = 0
        if count <= 0:
            return

        cfg = self.config
        self._rebuild_tables(voice)

        # phase accumulator: advance first, then sample; closed form per block
        n = self.grid.n
        phases = self._phase_buf[:count]
        np.multiply(self._ramp[:count], voice.phase_inc, out=phases)
        phases += voice.phase
        np.fmod(phases, n, out=phases)

        idx = self._idx_buf[:count]
        idx1 = self._idx1_buf[:count]
        frac = self._frac_buf[:count]
        np.floor(phases, out=frac)          # frac buffer briefly holds floor(phase)
        idx[:] = frac
        np.subtract(phases, frac, out=frac)
        np.add(idx, 1, out=idx1)
        np.remainder(idx1, n, out=idx1)
        voice.phase = float(phases[-1])

        one_minus = self._val0_buf[:count]
        np.subtract(1.0, frac, out=one_minus)

        env_t = self._val1_buf[:count]
        np.add(self._ramp[:count], float(voice.age), out=env_t)
        env_t /= cfg.sample_rate
        released_at = (None if voice.release_at_age is None
                       else voice.release_at_age / cfg.sample_rate)
        env = _envelope_block(self.envelope, env_t, released_at)

        # same expression tree as sonify.sample_wavetable: v0·(1−frac) + v1·frac
        other = self._phase_buf[:count]     # phases no longer needed
        for table, gain, sig in ((voice.table_l, voice.gain_l, self._sig_l[:count]),
                                 (voice.table_r, voice.gain_r, self._sig_r[:count])):
            np.take(table, idx, out=sig)
            sig *= one_minus
            np.take(table, idx1, out=other)
            other *= frac
            sig += other
            sig *= env
            sig *= voice.velocity_gain * gain

        mix_l[start:start + count] += self._sig_l[:count]
        mix_r[start:start + count] += self._sig_r[:count]

        voice.age += count
        if voice.release_at_age is not None:
            elapsed = (voice.age - voice.release_at_age) / cfg.sample_rate
            if elapsed >= self.envelope.release:
                voice.active = False

    def _preview_frame(self) -> tuple[np.ndarray, np.ndarray]:
        packet = gaussian_initial(self.grid, self.initial.center,
                                  self.initial.sigma, self.initial.momentum)
        density = packet.amp.real ** 2 + packet.amp.imag ** 2
        return density, self.potential.v.copy()

    def _publish_snapshot(self) -> None:
        active = [v for v in self._voices if v.active]
        if active:
            newest = max(active, key=lambda v: v.seq)
            self._snapshot = (newest.density.copy(), self.potential.v.copy())
        else:
            self._snapshot = self._preview_frame()

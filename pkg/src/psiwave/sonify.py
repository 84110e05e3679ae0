"""Turn a probability density into looped mono or stereo audio material.

A density array is one period of a tone: index = phase, value = amplitude.
A phase accumulator advancing by n·f_note/f_sample table indices per audio
sample resamples it at any pitch, with linear interpolation and wraparound.

Two stereo mappings preserve left/right position information:

  * pan_volume — one table, per-channel gains from the mean density of
    each half of the domain.
  * weighted — per-channel tables weighted by a smootherstep ramp
    f(x/2π) on the right and its complement on the left, so the two
    channel tables sum back to the mono table without distortion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * np.pi


class StereoMode(enum.IntEnum):
    """Channel layout of the sonified output."""

    MONO = 0
    PAN_VOLUME = 1
    WEIGHTED = 2

    @classmethod
    def parse(cls, value) -> "StereoMode":
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            name = value.strip().upper()
            aliases = {"PAN": "PAN_VOLUME"}
            name = aliases.get(name, name)
            if name in cls.__members__:
                return cls[name]
            raise DomainError(
                f"unknown stereo mode {value!r}; expected one of "
                f"{[m.name.lower() for m in cls]}"
            )
        try:
            return cls(int(round(float(value))))
        except (ValueError, TypeError):
            raise DomainError(f"cannot interpret {value!r} as a stereo mode") from None


@dataclass(eq=False)
class Wavetable:
    """One period of a tone; values come from |Ψ|² (DC removal makes them signed)."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size == 0:
            raise DomainError("wavetable must be a non-empty 1-D array")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("wavetable contains non-finite values")

    @property
    def n(self) -> int:
        return self.values.size


def smootherstep(u):
    """Quintic ramp 6u⁵ − 15u⁴ + 10u³ on [0, 1]; inputs clamped, output in [0, 1].

    Evaluated from whichever endpoint is closer, so f(u) + f(1−u) == 1
    holds exactly and the value never rounds outside the unit interval.
    """
    u = np.clip(u, 0.0, 1.0)
    near = np.minimum(u, 1.0 - u)
    p = near * near * near * (near * (6.0 * near - 15.0) + 10.0)
    return np.where(u > 0.5, 1.0 - p, p)


@dataclass(frozen=True, eq=False)
class StereoWeights:
    """Per-index channel weights: right_j = f(x_j/2π), left_j = 1 − right_j."""

    right: np.ndarray
    left: np.ndarray

    @property
    def n(self) -> int:
        return self.right.size


def stereo_weights(n: int) -> StereoWeights:
    """Build the smootherstep channel-weight tables for an n-point domain."""
    if n <= 0:
        raise DomainError(f"weight table size must be positive, got {n}")
    right = smootherstep(np.arange(n) / n)
    left = 1.0 - right
    right.flags.writeable = False
    left.flags.writeable = False
    return StereoWeights(right=right, left=left)


def phase_increment(note_freq: float, sample_rate: float, n: int) -> float:
    """Table indices to advance per audio sample: n·f_note/f_sample."""
    if not (np.isfinite(note_freq) and np.isfinite(sample_rate)) or sample_rate <= 0:
        raise DomainError(f"sample rate must be positive and finite, got {sample_rate}")
    if not 0.0 < note_freq < sample_rate / 2.0:
        raise DomainError(
            f"note frequency must lie in (0, {sample_rate / 2.0}) Hz "
            f"(Nyquist limit), got {note_freq}"
        )
    return n * note_freq / sample_rate


def sample_wavetable(table: Wavetable, phase):
    """Linearly interpolated, looped table read at a fractional index.

    Accepts a scalar phase or an array of phases (all finite, >= 0).
    """
    values = table.values
    n = values.size
    phase = np.asarray(phase, dtype=np.float64)
    if not np.all(np.isfinite(phase)) or np.any(phase < 0):
        raise DomainError("phase must be finite and non-negative")
    # fmod is exact, so index and fraction match the unreduced phase
    r = np.fmod(phase, n)
    i0 = r.astype(np.int64)
    frac = r - i0
    i1 = (i0 + 1) % n
    out = values[i0] * (1.0 - frac) + values[i1] * frac
    return float(out) if out.ndim == 0 else out


def apply_weighted_stereo(density: np.ndarray, w: StereoWeights) -> tuple[Wavetable, Wavetable]:
    """Split a density into left/right tables that sum back to it exactly.

    left is the rounded complement of the right product and right is
    re-derived from it; one of the two subtractions is exact (Sterbenz),
    so left_j + right_j == density_j holds bit-for-bit.
    """
    density = np.asarray(density, dtype=np.float64)
    if density.shape != w.right.shape:
        raise DomainError(
            f"density length {density.shape} does not match weights n={w.n}"
        )
    left = density - density * w.right
    right = density - left
    return Wavetable(left), Wavetable(right)


def pan_gains(density: np.ndarray) -> tuple[float, float]:
    """Per-channel gains from the mean density of each half of the domain.

    Linear pan law normalized to g_left + g_right = 2, so the mono sum of
    the two channels is unchanged.  A zero density pans to center (1, 1).
    """
    density = np.asarray(density, dtype=np.float64)
    n = density.size
    if n % 2 != 0:
        raise DomainError(f"pan law needs an even table size, got {n}")
    a_l = float(np.mean(density[: n // 2]))
    a_r = float(np.mean(density[n // 2:]))
    total = a_l + a_r
    if total == 0.0:
        return 1.0, 1.0
    return 2.0 * a_l / total, 2.0 * a_r / total


def remove_dc(table: Wavetable) -> Wavetable:
    """Subtract the table mean; looped |Ψ|² otherwise carries a strong DC offset."""
    return Wavetable(table.values - np.mean(table.values))


def peak_normalize(table: Wavetable) -> Wavetable:
    """Scale so the absolute peak is 1; zero tables pass through unchanged."""
    peak = float(np.max(np.abs(table.values)))
    if peak == 0.0:
        return Wavetable(table.values.copy())
    return Wavetable(table.values / peak)

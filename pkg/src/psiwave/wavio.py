"""Minimal RIFF/WAVE writer: stereo float32 or PCM16, little-endian.

Both layouts use the plain 44-byte header (12-byte RIFF prelude, 16-byte
fmt chunk body, 8-byte data header); float data is declared with format
code 3, integer PCM with code 1.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError

FORMAT_PCM16 = "pcm16"
FORMAT_FLOAT32 = "float32"

_FMT_CODE = {FORMAT_PCM16: 1, FORMAT_FLOAT32: 3}
_BYTES_PER_SAMPLE = {FORMAT_PCM16: 2, FORMAT_FLOAT32: 4}


@dataclass(frozen=True)
class WavSpec:
    sample_rate: int
    sample_format: str = FORMAT_FLOAT32
    channels: int = 2

    def __post_init__(self):
        if self.sample_format not in _FMT_CODE:
            raise ConfigError(
                f"format must be '{FORMAT_PCM16}' or '{FORMAT_FLOAT32}', "
                f"got {self.sample_format!r}")
        if self.channels not in (1, 2):
            raise ConfigError(f"channels must be 1 or 2, got {self.channels}")
        if not self.sample_rate > 0:
            raise ConfigError(f"sample rate must be positive, got {self.sample_rate}")


def _quantize_pcm16(frames: np.ndarray) -> np.ndarray:
    scaled = frames * 32768.0
    # round half away from zero, then clamp the +1.0 edge onto 32767
    rounded = np.floor(np.abs(scaled) + 0.5) * np.sign(scaled)
    return np.clip(rounded, -32768.0, 32767.0).astype("<i2")


def write_wav(spec: WavSpec, frames: np.ndarray) -> bytes:
    """Encode interleaved-by-row frames (num_frames × channels) as WAV bytes."""
    frames = np.asarray(frames, dtype=np.float64)
    if frames.ndim == 1:
        frames = frames[:, np.newaxis]
    if frames.ndim != 2 or frames.shape[1] != spec.channels:
        raise DomainError(
            f"expected frames shaped (n, {spec.channels}), got {frames.shape}")
    if not np.all(np.isfinite(frames)):
        raise DomainError("frames contain non-finite samples")

    if spec.sample_format == FORMAT_PCM16:
        payload = _quantize_pcm16(frames).tobytes()
    else:
        payload = frames.astype("<f4").tobytes()

    channels = spec.channels
    bytes_per_sample = _BYTES_PER_SAMPLE[spec.sample_format]
    block_align = channels * bytes_per_sample
    byte_rate = int(spec.sample_rate) * block_align
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16,
        _FMT_CODE[spec.sample_format], channels,
        int(spec.sample_rate), byte_rate,
        block_align, bytes_per_sample * 8,
        b"data", len(payload),
    )
    return header + payload

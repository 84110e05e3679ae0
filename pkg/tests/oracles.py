"""Independent reference implementations used only by the test suite.

Everything here is deliberately written against the production code:
direct-summation transforms in plain Python, and a dense matrix
propagator that never touches numpy's FFT.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

TWO_PI = 2.0 * math.pi


def dft_direct(values) -> list[complex]:
    """O(n²) forward transform: A_k = Σ_j a_j·exp(−2πi·jk/n)."""
    a = list(values)
    n = len(a)
    return [
        sum(a[j] * cmath.exp(-2j * math.pi * j * k / n) for j in range(n))
        for k in range(n)
    ]


def idft_direct(values) -> list[complex]:
    """O(n²) inverse transform: a_j = (1/n)·Σ_k A_k·exp(+2πi·jk/n)."""
    a = list(values)
    n = len(a)
    return [
        sum(a[k] * cmath.exp(2j * math.pi * j * k / n) for k in range(n)) / n
        for j in range(n)
    ]


def signed_index(k: int, n: int) -> int:
    return k if k <= n // 2 else k - n


def split_step_direct(amp, v, dt: float) -> list[complex]:
    """One timestep via direct summation: potential phase, DFT, kinetic phase, iDFT."""
    n = len(amp)
    tilde = [cmath.exp(-1j * v[j] * dt) * amp[j] for j in range(n)]
    spectrum = dft_direct(tilde)
    for k in range(n):
        kappa = ((TWO_PI / n) * signed_index(k, n)) ** 2
        spectrum[k] *= cmath.exp(-1j * kappa * dt)
    return idft_direct(spectrum)


def matrix_propagator(n: int, v: np.ndarray, dt: float) -> np.ndarray:
    """Dense one-step evolution matrix built from explicit DFT matrices."""
    j = np.arange(n)
    forward = np.exp(-2j * np.pi * np.outer(j, j) / n)
    inverse = np.exp(2j * np.pi * np.outer(j, j) / n) / n
    k = np.arange(n)
    s = np.where(k <= n // 2, k, k - n).astype(np.float64)
    kappa = ((TWO_PI / n) * s) ** 2
    return inverse @ np.diag(np.exp(-1j * kappa * dt)) @ forward @ np.diag(np.exp(-1j * np.asarray(v, dtype=np.float64) * dt))


def first_return_time(series: np.ndarray, dt: float) -> float:
    """Time of the first local maximum of ⟨x⟩ after its initial descent.

    The series starts at a turning point; we wait for the first rising
    sample, then take the next falling edge, refining the peak with a
    three-point parabolic fit.
    """
    diffs = np.diff(series)
    rising = np.nonzero(diffs > 0)[0]
    if rising.size == 0:
        raise ValueError("series never rises; no return detected")
    start = rising[0]
    falling = np.nonzero(diffs[start:] <= 0)[0]
    if falling.size == 0:
        raise ValueError("series never turns over after rising")
    peak = start + falling[0]
    y0, y1, y2 = series[peak - 1], series[peak], series[peak + 1]
    denom = y0 - 2.0 * y1 + y2
    shift = 0.0 if denom == 0 else 0.5 * (y0 - y2) / denom
    return (peak + shift) * dt

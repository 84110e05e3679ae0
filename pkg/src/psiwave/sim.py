"""Discretized 1-D Schrödinger simulation on a periodic grid.

The state is a complex array Ψ sampled at x_j = 2π·j/n.  One timestep
applies two unit-modulus multiplications:

    Ψ̃ = exp(-i·V(x)·Δt) · Ψ                    (potential phase, position space)
    Ψ' = iDFT( exp(-i·κ·Δt) · DFT(Ψ̃) )         (kinetic phase, momentum space)

with κ_k = ((2π/n)·s(k))² and s(k) the signed frequency index
(s = k for k ≤ n/2, s = k − n above).  Both factors have modulus one, so
evolution preserves the norm up to transform round-off.

Physical constants are scaled out; dt is in arbitrary simulation units.
Inputs are not checked for being actual solutions of the continuous
equation — any finite state/potential pair is evolved as-is.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError

TWO_PI = 2.0 * np.pi

POTENTIAL_KINDS = ("free", "harmonic", "barrier", "well", "custom")


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform periodic grid of n samples on [0, 2π)."""

    n: int
    x: np.ndarray
    dx: float

    def signed_freq(self) -> np.ndarray:
        """Signed frequency index per DFT bin: k for k ≤ n/2, else k − n."""
        k = np.arange(self.n)
        return np.where(k <= self.n // 2, k, k - self.n).astype(np.float64)

    def kinetic_eigenvalues(self) -> np.ndarray:
        """Kinetic phase rates κ_k = ((2π/n)·s(k))² per DFT bin."""
        return ((TWO_PI / self.n) * self.signed_freq()) ** 2


def make_grid(n: int) -> Grid:
    """Build the n-point grid; n must be a power of two, at least 8."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ConfigError(f"grid size must be an integer, got {n!r}")
    if not _is_power_of_two(int(n)) or n < 8:
        raise ConfigError(
            f"grid size must be a power of two and >= 8 "
            f"(radix-2 transform requirement), got {n}"
        )
    n = int(n)
    dx = TWO_PI / n
    x = np.arange(n) * dx
    x.flags.writeable = False
    return Grid(n=n, x=x, dx=dx)


@dataclass(frozen=True)
class SimParams:
    """Validated timestep quantity Δt."""

    dt: float

    def __post_init__(self):
        _check_dt(self.dt)


def _check_dt(dt: float) -> None:
    if not (np.isfinite(dt) and dt > 0):
        raise DomainError(f"dt must be positive and finite, got {dt}")


@dataclass(eq=False)
class WaveFunction:
    """Complex probability amplitude Ψ on a grid."""

    grid: Grid
    amp: np.ndarray

    def __post_init__(self):
        self.amp = np.asarray(self.amp, dtype=np.complex128)
        if self.amp.shape != (self.grid.n,):
            raise DomainError(
                f"amplitude length {self.amp.shape} does not match grid n={self.grid.n}"
            )
        if not np.all(np.isfinite(self.amp)):
            raise DomainError("wave function contains non-finite components")


@dataclass(eq=False)
class Potential:
    """Real potential samples V(x_j) plus the descriptor they were built from."""

    grid: Grid
    v: np.ndarray
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.v = np.asarray(self.v, dtype=np.float64)
        if self.v.shape != (self.grid.n,):
            raise DomainError(
                f"potential length {self.v.shape} does not match grid n={self.grid.n}"
            )
        if not np.all(np.isfinite(self.v)):
            raise DomainError("potential contains non-finite samples")
        if self.kind not in POTENTIAL_KINDS:
            raise DomainError(f"unknown potential kind {self.kind!r}")


def gaussian_initial(grid: Grid, center: float, sigma: float,
                     momentum: float = 0.0) -> WaveFunction:
    """Normalized Gaussian packet exp(-(x-c)²/2σ²)·exp(i·momentum·x)."""
    if not (np.isfinite(center) and np.isfinite(sigma) and np.isfinite(momentum)):
        raise DomainError("gaussian parameters must be finite")
    if sigma <= 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if not 0.0 <= center < TWO_PI:
        raise DomainError(f"center must lie in [0, 2π), got {center}")
    envelope = np.exp(-((grid.x - center) ** 2) / (2.0 * sigma * sigma))
    amp = envelope * np.exp(1j * momentum * grid.x)
    amp /= np.sqrt(np.sum(envelope * envelope) * grid.dx)
    return WaveFunction(grid=grid, amp=amp)


def _check_interval(left: float, right: float) -> None:
    if not (np.isfinite(left) and np.isfinite(right)):
        raise DomainError("interval bounds must be finite")
    if not (0.0 <= left < right <= TWO_PI):
        raise DomainError(
            f"interval must satisfy 0 <= left < right <= 2π, got [{left}, {right}]"
        )


def free_potential(grid: Grid) -> Potential:
    """V ≡ 0."""
    return Potential(grid, np.zeros(grid.n), kind="free", params={})


def harmonic_potential(grid: Grid, strength: float, center: float) -> Potential:
    """V = strength·(x − center)², evaluated without periodic wrapping."""
    if not (np.isfinite(strength) and np.isfinite(center)):
        raise DomainError("harmonic parameters must be finite")
    if strength < 0:
        raise DomainError(f"harmonic strength must be >= 0, got {strength}")
    v = strength * (grid.x - center) ** 2
    return Potential(grid, v, kind="harmonic",
                     params={"strength": strength, "center": center})


def barrier_potential(grid: Grid, height: float, left: float, right: float) -> Potential:
    """V = height on [left, right] (inclusive), 0 elsewhere."""
    _check_interval(left, right)
    if not np.isfinite(height) or height < 0:
        raise DomainError(f"barrier height must be >= 0 and finite, got {height}")
    inside = (grid.x >= left) & (grid.x <= right)
    v = np.where(inside, height, 0.0)
    return Potential(grid, v, kind="barrier",
                     params={"height": height, "left": left, "right": right})


def well_potential(grid: Grid, depth_walls: float, left: float, right: float) -> Potential:
    """V = 0 on [left, right] (inclusive), depth_walls elsewhere."""
    _check_interval(left, right)
    if not np.isfinite(depth_walls) or depth_walls < 0:
        raise DomainError(f"well wall height must be >= 0 and finite, got {depth_walls}")
    inside = (grid.x >= left) & (grid.x <= right)
    v = np.where(inside, 0.0, depth_walls)
    return Potential(grid, v, kind="well",
                     params={"depth_walls": depth_walls, "left": left, "right": right})


def custom_potential(grid: Grid, values) -> Potential:
    """Caller-supplied samples; must be finite and length n."""
    v = np.asarray(values, dtype=np.float64)
    if v.shape != (grid.n,):
        raise DomainError(f"custom potential must have length {grid.n}, got {v.shape}")
    return Potential(grid, v.copy(), kind="custom", params={})


def make_potential(grid: Grid, kind: str, **params) -> Potential:
    """Dispatch to the named potential constructor."""
    if kind == "free":
        return free_potential(grid)
    if kind == "harmonic":
        return harmonic_potential(grid, params["strength"], params["center"])
    if kind == "barrier":
        return barrier_potential(grid, params["height"], params["left"], params["right"])
    if kind == "well":
        return well_potential(grid, params["depth_walls"], params["left"], params["right"])
    if kind == "custom":
        return custom_potential(grid, params["values"])
    raise DomainError(f"unknown potential kind {kind!r}")


def dft(a: np.ndarray) -> np.ndarray:
    """Forward transform A_k = Σ_j a_j·exp(-2πi·jk/n); n must be a power of two."""
    a = np.asarray(a)
    if not _is_power_of_two(a.shape[-1]):
        raise DomainError(f"transform length must be a power of two, got {a.shape[-1]}")
    return np.fft.fft(a)


def idft(a: np.ndarray) -> np.ndarray:
    """Inverse transform a_j = (1/n)·Σ_k A_k·exp(+2πi·jk/n)."""
    a = np.asarray(a)
    if not _is_power_of_two(a.shape[-1]):
        raise DomainError(f"transform length must be a power of two, got {a.shape[-1]}")
    return np.fft.ifft(a)


def _require_same_grid(psi: WaveFunction, v: Potential) -> None:
    if psi.grid.n != v.grid.n:
        raise DomainError(
            f"wave function (n={psi.grid.n}) and potential (n={v.grid.n}) "
            f"must share one grid"
        )


def step_potential(psi: WaveFunction, v: Potential, dt: float) -> WaveFunction:
    """Apply the position-space phase exp(-i·V·dt); preserves the norm exactly."""
    _require_same_grid(psi, v)
    _check_dt(dt)
    return WaveFunction(psi.grid, np.exp(-1j * v.v * dt) * psi.amp)


def step_kinetic(psi: WaveFunction, dt: float) -> WaveFunction:
    """Apply the momentum-space phase exp(-i·κ·dt) via DFT round trip."""
    _check_dt(dt)
    phase = np.exp(-1j * psi.grid.kinetic_eigenvalues() * dt)
    return WaveFunction(psi.grid, idft(phase * dft(psi.amp)))


def timestep(psi: WaveFunction, v: Potential, dt: float) -> WaveFunction:
    """One split-step evolution: potential phase, then kinetic phase."""
    return step_kinetic(step_potential(psi, v, dt), dt)


def probability_density(psi: WaveFunction) -> np.ndarray:
    """|Ψ_j|² per grid point."""
    return psi.amp.real ** 2 + psi.amp.imag ** 2


def norm(psi: WaveFunction) -> float:
    """Σ_j |Ψ_j|²·dx."""
    return float(np.sum(probability_density(psi)) * psi.grid.dx)


def expectation_position(psi: WaveFunction) -> float:
    """⟨x⟩ = Σ_j x_j·|Ψ_j|²·dx / norm."""
    d = probability_density(psi)
    total = np.sum(d)
    if total == 0.0:
        raise DomainError("expectation of a zero wave function is undefined")
    return float(np.sum(psi.grid.x * d) / total)


def probability_in_interval(psi: WaveFunction, left: float, right: float) -> float:
    """Σ|Ψ_j|²·dx over grid points with left < x_j ≤ right."""
    d = probability_density(psi)
    mask = (psi.grid.x > left) & (psi.grid.x <= right)
    return float(np.sum(d[mask]) * psi.grid.dx)


class Propagator:
    """Cached phase factors for repeated timesteps with fixed (V, dt).

    `step_into` advances an amplitude array in place using preallocated
    scratch, which is what the voice engine needs at block rate.  Results
    are bit-identical to `timestep`.
    """

    def __init__(self, grid: Grid, v: Potential, dt: float):
        _check_dt(dt)
        if grid.n != v.grid.n:
            raise DomainError("propagator grid and potential grid differ")
        self.grid = grid
        self.dt = dt
        self.potential_phase = np.exp(-1j * v.v * dt)
        self.kinetic_phase = np.exp(-1j * grid.kinetic_eigenvalues() * dt)
        self._scratch = np.empty(grid.n, dtype=np.complex128)

    def step_into(self, amp: np.ndarray) -> None:
        """Advance `amp` by one timestep in place."""
        np.multiply(self.potential_phase, amp, out=self._scratch)
        spectrum = np.fft.fft(self._scratch)
        np.multiply(self.kinetic_phase, spectrum, out=spectrum)
        np.copyto(amp, np.fft.ifft(spectrum))

    def step(self, psi: WaveFunction) -> WaveFunction:
        """Functional single step, same arithmetic as `step_into`."""
        out = psi.amp.copy()
        self.step_into(out)
        return WaveFunction(psi.grid, out)

    def run(self, psi: WaveFunction, steps: int) -> WaveFunction:
        """Advance `steps` timesteps and return the final state."""
        amp = psi.amp.copy()
        for _ in range(steps):
            self.step_into(amp)
        return WaveFunction(psi.grid, amp)

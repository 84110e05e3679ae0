"""psiwave: a polyphonic synthesizer driven by a simulated 1-D quantum wave.

The simulation core evolves a complex wave function on a periodic grid
with a split-step spectral method; the sonifier treats the probability
density as one period of a tone; the engine manages per-note simulations,
ADSR envelopes, and live parameter changes; the render module turns a
JSON config into a WAV file deterministically.
"""

__version__ = "0.1.0"

from .errors import ConfigError, DomainError
from .sim import (
    Grid,
    Potential,
    Propagator,
    SimParams,
    WaveFunction,
    barrier_potential,
    custom_potential,
    dft,
    expectation_position,
    free_potential,
    gaussian_initial,
    harmonic_potential,
    idft,
    make_grid,
    make_potential,
    norm,
    probability_density,
    probability_in_interval,
    step_kinetic,
    step_potential,
    timestep,
    well_potential,
)
from .sonify import (
    StereoMode,
    StereoWeights,
    Wavetable,
    apply_weighted_stereo,
    pan_gains,
    phase_increment,
    remove_dc,
    sample_wavetable,
    smootherstep,
    stereo_weights,
)
from .engine import (
    Engine,
    EngineConfig,
    EnvelopeParams,
    InitialState,
    NoteEvent,
    envelope_level,
    midi_to_freq,
)
from .render import NoteSpec, RenderConfig, parse_config, render_frames, render_wav_bytes
from .wavio import WavSpec, write_wav

__all__ = [name for name in dir() if not name.startswith("_")]

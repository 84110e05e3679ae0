import json

import numpy as np
import pytest

from psiwave import ConfigError, DomainError, Engine, EngineConfig
from psiwave.boundary import (
    engine_create,
    engine_destroy,
    engine_note_off,
    engine_note_on,
    engine_param_bounds,
    engine_process,
    engine_set_param,
    engine_visual_frame,
)

CONFIG = json.dumps({
    "engine": {"sample_rate": 48000, "n": 128, "dt": 1e-3, "sim_speed": 2000},
    "envelope": {"attack": 0.01, "decay": 0.05, "sustain": 0.8, "release": 0.1},
    "initial": {"center": 3.141592653589793, "sigma": 0.4, "momentum": 0.0},
    "potential": {"kind": "harmonic", "strength": 1.0, "center": 3.141592653589793},
})


@pytest.fixture
def handle():
    h = engine_create(CONFIG)
    yield h
    engine_destroy(h)


def test_create_and_destroy():
    h = engine_create(CONFIG)
    assert isinstance(h, int)
    engine_destroy(h)
    with pytest.raises(DomainError):
        engine_process(h, 16)
    engine_destroy(h)  # double destroy is harmless


def test_create_rejects_bad_json():
    with pytest.raises(ConfigError, match="line"):
        engine_create("{nope")
    with pytest.raises(ConfigError, match="unknown key"):
        engine_create(json.dumps({"engines": {}}))
    with pytest.raises(ConfigError):
        engine_create(json.dumps({"engine": {"sample_rate": 1}}))


def test_process_returns_interleaved_float32(handle):
    engine_note_on(handle, 69, 127)
    out = engine_process(handle, 256)
    assert out.dtype == np.float32
    assert out.shape == (512,)

    twin = Engine(EngineConfig())
    twin.note_on(69, 127)
    left, right = twin.process_block(256)
    assert np.array_equal(out[0::2], left.astype(np.float32))
    assert np.array_equal(out[1::2], right.astype(np.float32))


def test_note_off_releases(handle):
    engine_note_on(handle, 69, 127)
    engine_process(handle, 512)
    engine_note_off(handle, 69)
    for _ in range(20):
        out = engine_process(handle, 512)
    assert np.all(out == 0)


def test_set_param_roundtrip(handle):
    assert engine_set_param(handle, "sim_speed", 0.0) is True
    assert engine_set_param(handle, "sim_speed", -1.0) is False
    assert engine_set_param(handle, "no_such_param", 1.0) is False


def test_visual_frame_shapes(handle):
    density, potential = engine_visual_frame(handle)
    assert density.shape == (128,)
    assert potential.shape == (128,)
    assert density.dtype == np.float64
    assert potential.dtype == np.float64
    assert abs(np.sum(density) * (2 * np.pi / 128) - 1.0) <= 1e-12


def test_param_bounds_published(handle):
    bounds = engine_param_bounds(handle)
    assert bounds["sustain"] == (0.0, 1.0)
    assert bounds["gaussian_momentum"] == (-64.0, 64.0)
    assert set(bounds) >= {"sim_speed", "dt", "stereo_mode", "dc_removal",
                           "master_gain", "attack", "decay", "sustain", "release",
                           "gaussian_center", "gaussian_sigma", "gaussian_momentum",
                           "potential_kind", "potential_p1", "potential_p2",
                           "potential_p3"}


def test_empty_config_uses_defaults():
    h = engine_create("{}")
    try:
        out = engine_process(h, 64)
        assert np.all(out == 0)
    finally:
        engine_destroy(h)

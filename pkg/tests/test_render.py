import json
import subprocess
import sys

import numpy as np
import pytest

from psiwave import ConfigError, Propagator, gaussian_initial, harmonic_potential, make_grid
from psiwave.cli import main as cli_main
from psiwave.render import (
    format_dump,
    parse_config,
    render_frames,
    render_to_files,
    render_wav_bytes,
    simulate_to_file,
)

MINIMAL = json.dumps({
    "notes": [{"start": 0.0, "duration": 1.0, "note": 69}],
    "duration": 1.5,
})


def config_text(**root) -> str:
    base = {
        "engine": {"sample_rate": 48000, "n": 128, "dt": 1e-3, "sim_speed": 2000},
        "envelope": {"attack": 0.01, "decay": 0.05, "sustain": 0.8, "release": 0.05},
        "notes": [{"start": 0.0, "duration": 0.2, "note": 69, "velocity": 100}],
        "duration": 0.3,
    }
    base.update(root)
    return json.dumps(base)


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------

def test_parse_minimal_applies_defaults():
    config = parse_config(MINIMAL)
    assert len(config.notes) == 1
    assert config.sample_format == "float32"
    engine = config.make_engine()
    assert engine.grid.n == 128
    assert engine.config.dt == 1e-3
    assert engine.config.sim_speed == 2000.0
    assert engine.config.stereo_mode.name == "WEIGHTED"
    assert engine.config.dc_removal is True


def test_parse_rejects_non_power_of_two_grid():
    with pytest.raises(ConfigError, match="power of two"):
        parse_config(config_text(engine={"n": 100}))


def test_parse_sorts_notes():
    config = parse_config(config_text(notes=[
        {"start": 0.5, "duration": 0.1, "note": 60},
        {"start": 0.0, "duration": 0.1, "note": 72},
    ], duration=1.0))
    assert [n.note for n in config.notes] == [72, 60]


def test_parse_error_reports_position():
    with pytest.raises(ConfigError, match=r"line \d+, column \d+"):
        parse_config('{"notes": [}')


def test_parse_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config(config_text(reverb=0.5))
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config(config_text(engine={"n": 128, "oversample": 2}))


def test_parse_rejects_short_duration():
    with pytest.raises(ConfigError, match="duration"):
        parse_config(config_text(duration=0.1))


def test_parse_duration_defaults_to_cover_release():
    config = parse_config(config_text(duration=None))
    assert config.duration == pytest.approx(0.25)


def test_parse_rejects_bad_note_fields():
    with pytest.raises(ConfigError):
        parse_config(config_text(notes=[{"start": -1, "duration": 1, "note": 69}]))
    with pytest.raises(ConfigError):
        parse_config(config_text(notes=[{"start": 0, "duration": 1, "note": 200}]))
    with pytest.raises(ConfigError):
        parse_config(config_text(notes=[{"start": 0, "duration": 1, "note": 69,
                                         "velocity": 0}]))


def test_parse_rejects_zero_notes_without_duration():
    with pytest.raises(ConfigError, match="duration"):
        parse_config(json.dumps({"notes": []}))


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

def test_zero_notes_renders_exact_silence():
    config = parse_config(json.dumps({"notes": [], "duration": 1.0}))
    frames, _, _ = render_frames(config)
    assert frames.shape == (48000, 2)
    assert np.all(frames == 0)
    data = render_wav_bytes(config)
    assert data[44:] == b"\x00" * (48000 * 2 * 4)


def test_render_is_deterministic():
    config_a = parse_config(config_text())
    config_b = parse_config(config_text())
    assert render_wav_bytes(config_a) == render_wav_bytes(config_b)


def test_render_frame_count_is_ceil():
    config = parse_config(json.dumps({"notes": [], "duration": 0.100001}))
    frames, _, _ = render_frames(config)
    assert frames.shape[0] == int(np.ceil(0.100001 * 48000))


def test_note_start_rounded_to_nearest_sample():
    offset_seconds = 1000.25 / 48000.0
    config = parse_config(config_text(
        envelope={"attack": 0.0, "decay": 0.0, "sustain": 1.0, "release": 0.01},
        notes=[{"start": offset_seconds, "duration": 0.1, "note": 69}],
        duration=0.2,
    ))
    frames, _, _ = render_frames(config)
    nonzero = np.nonzero(frames[:, 0])[0]
    assert nonzero[0] == 1000


def test_mono_fold_of_weighted_render_matches_mono_render():
    # with DC removal off, the weighted channel tables sum exactly to the
    # mono table, so folding the stereo render recovers the mono render
    def render_mode(mode):
        config = parse_config(config_text(
            engine={"sample_rate": 48000, "n": 128, "dt": 1e-3, "sim_speed": 2000,
                    "stereo_mode": mode, "dc_removal": False, "master_gain": 1.0},
        ))
        frames, _, _ = render_frames(config)
        return frames

    weighted = render_mode("weighted")
    mono = render_mode("mono")
    folded = weighted[:, 0] + weighted[:, 1]
    assert np.max(np.abs(folded - mono[:, 0])) <= 1e-6


def test_frozen_a4_dominant_peak_at_440(tmp_path):
    config = parse_config(config_text(
        engine={"sample_rate": 48000, "n": 128, "sim_speed": 0,
                "stereo_mode": "mono", "master_gain": 1.0},
        envelope={"attack": 0.0, "decay": 0.0, "sustain": 1.0, "release": 0.01},
        notes=[{"start": 0.0, "duration": 1.0, "note": 69, "velocity": 127}],
        duration=1.01,
    ))
    frames, _, _ = render_frames(config)
    window = frames[:48000, 0]
    spectrum = np.abs(np.fft.rfft(window))
    spectrum[0] = 0.0
    peak_hz = np.argmax(spectrum) * 48000.0 / window.size
    assert abs(peak_hz - 440.0) <= 48000.0 / window.size


# ----------------------------------------------------------------------
# frame dumps
# ----------------------------------------------------------------------

def parse_dump(text: str):
    rows = [line.split(",") for line in text.strip().splitlines()]
    indices = [int(r[0]) for r in rows]
    values = [np.array([float(v) for v in r[1:]]) for r in rows]
    return indices, values


def test_dump_rows_match_independent_replay(tmp_path):
    dump_path = tmp_path / "frames.csv"
    config = parse_config(config_text(
        dump={"path": str(dump_path), "every_steps": 16},
    ))
    render_to_files(config, out_path=str(tmp_path / "out.wav"))
    indices, values = parse_dump(dump_path.read_text())

    assert indices[0] == -1
    grid = make_grid(128)
    assert np.array_equal(values[0], harmonic_potential(grid, 1.0, np.pi).v)

    # the voice lives for note + release (0.25 s), stepping until the block
    # in which its envelope reaches zero: ~500 steps at sim_speed 2000
    last_step = indices[-1]
    assert indices[1:] == list(range(16, last_step + 1, 16))
    assert 496 <= last_step <= 512

    psi = gaussian_initial(grid, np.pi, 0.4, 0.0)
    prop = Propagator(grid, harmonic_potential(grid, 1.0, np.pi), 1e-3)
    amp = psi.amp.copy()
    row = 1
    for step in range(1, last_step + 1):
        prop.step_into(amp)
        if step % 16 == 0:
            assert indices[row] == step
            np.testing.assert_allclose(values[row], amp.real ** 2 + amp.imag ** 2,
                                       rtol=0, atol=1e-12)
            row += 1


def test_dump_values_roundtrip_exactly():
    potential = np.array([0.1, 1.0 / 3.0, np.pi])
    rows = [(2, np.array([1e-17, 0.7, 123456.789]))]
    indices, values = parse_dump(format_dump(potential, rows))
    assert np.array_equal(values[0], potential)
    assert np.array_equal(values[1], rows[0][1])


def test_simulate_rows_match_replay(tmp_path):
    dump_path = tmp_path / "sim.csv"
    config = parse_config(config_text())
    simulate_to_file(config, steps=48, dump_path=str(dump_path), every_steps=16)
    indices, values = parse_dump(dump_path.read_text())
    assert indices == [-1, 16, 32, 48]

    grid = make_grid(128)
    prop = Propagator(grid, harmonic_potential(grid, 1.0, np.pi), 1e-3)
    psi = gaussian_initial(grid, np.pi, 0.4, 0.0)
    state = prop.run(psi, 32)
    np.testing.assert_allclose(values[2], state.amp.real ** 2 + state.amp.imag ** 2,
                               rtol=0, atol=0)


def test_frozen_sim_dumps_only_potential_row(tmp_path):
    # rows are step-indexed; a frozen simulation performs no steps, so the
    # dump holds just the potential (the static density is still visible
    # through the engine's visual frame)
    dump_path = tmp_path / "frozen.csv"
    config = parse_config(config_text(
        engine={"sample_rate": 48000, "n": 128, "sim_speed": 0},
        dump={"path": str(dump_path), "every_steps": 1},
    ))
    render_to_files(config, out_path=str(tmp_path / "out.wav"))
    indices, _ = parse_dump(dump_path.read_text())
    assert indices == [-1]


def test_near_stationary_state_dumps_near_identical_rows(tmp_path):
    # ground-state-width packet in the matching harmonic well: density is
    # essentially static, so consecutive dump rows agree closely
    dump_path = tmp_path / "stationary.csv"
    sigma = float(np.sqrt(np.pi / 128.0))
    config = parse_config(config_text(
        initial={"center": np.pi, "sigma": sigma, "momentum": 0.0},
        dump={"path": str(dump_path), "every_steps": 64},
    ))
    render_to_files(config, out_path=str(tmp_path / "out.wav"))
    indices, values = parse_dump(dump_path.read_text())
    assert len(values) >= 4
    peak = float(np.max(values[1]))
    for previous, row in zip(values[1:], values[2:]):
        np.testing.assert_allclose(row, previous, rtol=0, atol=2e-3 * peak)


def test_simulate_row_count(tmp_path):
    dump_path = tmp_path / "sim.csv"
    config = parse_config(config_text())
    simulate_to_file(config, steps=100, dump_path=str(dump_path), every_steps=7)
    indices, _ = parse_dump(dump_path.read_text())
    assert len(indices) == 1 + 100 // 7


# ----------------------------------------------------------------------
# CLI
# ----------------------------------------------------------------------

def write_config(tmp_path, text):
    path = tmp_path / "config.json"
    path.write_text(text)
    return str(path)


def test_cli_render_success(tmp_path, capsys):
    config_path = write_config(tmp_path, config_text())
    out_path = str(tmp_path / "out.wav")
    assert cli_main(["render", "--config", config_path, "--out", out_path]) == 0
    data = (tmp_path / "out.wav").read_bytes()
    assert data[:4] == b"RIFF"


def test_cli_validation_error_exits_1(tmp_path, capsys):
    config_path = write_config(tmp_path, config_text(engine={"n": 100}))
    assert cli_main(["render", "--config", config_path,
                     "--out", str(tmp_path / "x.wav")]) == 1
    assert "power of two" in capsys.readouterr().err


def test_cli_missing_config_exits_2(tmp_path, capsys):
    assert cli_main(["render", "--config", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path / "x.wav")]) == 2


def test_cli_unwritable_output_exits_2(tmp_path, capsys):
    config_path = write_config(tmp_path, config_text())
    assert cli_main(["render", "--config", config_path,
                     "--out", str(tmp_path / "no_dir" / "x.wav")]) == 2


def test_cli_simulate(tmp_path):
    config_path = write_config(tmp_path, config_text())
    dump = tmp_path / "rows.csv"
    assert cli_main(["simulate", "--config", config_path, "--steps", "10",
                     "--dump", str(dump), "--every", "5"]) == 0
    indices, _ = parse_dump(dump.read_text())
    assert indices == [-1, 5, 10]


def test_cli_version_subprocess():
    out = subprocess.run([sys.executable, "-m", "psiwave.cli", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "psiwave" in out.stdout
